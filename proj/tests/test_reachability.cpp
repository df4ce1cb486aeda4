#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "nmpl/reachability.hpp"

using namespace nmpl;

namespace {

CellGrid grid1d(int n, double lo = -1, double hi = 1) {
    CellGrid g;
    g.dim = 1;
    g.lo[0] = lo;
    g.hi[0] = hi;
    g.n[0] = n;
    return g;
}

CellGrid grid2d(int n, double lo = -1, double hi = 1) {
    CellGrid g;
    g.dim = 2;
    for (int d = 0; d < 2; ++d) {
        g.lo[d] = lo;
        g.hi[d] = hi;
        g.n[d] = n;
    }
    return g;
}

// dense breadth-first oracle: recompute A_{n+1} from scratch each level
std::vector<uint8_t> brute_force(const MeasureSpec& m, const Vec& x0, const CellGrid& g,
                                 bool restrict_omega, const std::vector<uint8_t>* omega,
                                 int max_iter) {
    SupportMask sm = support_mask(m, g);
    std::vector<uint8_t> a(g.count(), 0);
    a[g.index(g.locate(x0))] = 1;
    for (int it = 0; it < max_iter; ++it) {
        std::vector<uint8_t> b = a;
        for (int64_t ci = 0; ci < g.count(); ++ci) {
            if (!a[ci]) continue;
            if (restrict_omega && omega && !(*omega)[ci]) continue;
            auto c = g.coords(ci);
            for (const auto& o : sm.offsets) {
                std::array<int, kMaxDim> tgt{};
                bool ok = true;
                for (int d = 0; d < g.dim; ++d) {
                    tgt[d] = c[d] + o[d];
                    if (tgt[d] < 0 || tgt[d] >= g.n[d]) {
                        ok = false;
                        break;
                    }
                }
                if (ok) b[g.index(tgt)] = 1;
            }
        }
        if (b == a) break;
        a.swap(b);
    }
    return a;
}

void check_matches_oracle(const MeasureSpec& m, const Vec& x0, const CellGrid& g) {
    auto res = iterate_reachable(m, {}, x0, g, false, nullptr, 500);
    auto want = brute_force(m, x0, g, false, nullptr, 500);
    REQUIRE(res.converged);
    for (int64_t i = 0; i < g.count(); ++i) CHECK(res.mask[i] == want[i]);
}

}  // namespace

TEST_CASE("support masks of the catalogue kinds") {
    CellGrid g = grid2d(9);
    auto full = support_mask(MeasureSpec::radial_stable(1.5, 2), g);
    // all nonzero offsets marked
    CHECK(static_cast<int>(full.offsets.size()) == 17 * 17 - 1);

    auto hs = support_mask(MeasureSpec::half_space_stable(1.5, 2, 0), g);
    for (const auto& o : hs.offsets) CHECK(o[0] >= 0);
    CHECK(static_cast<int>(hs.offsets.size()) == 9 * 17 - 1);

    auto cone = support_mask(
        MeasureSpec::cone_restricted(MeasureSpec::radial_stable(1.5, 2), 1.0), g);
    for (const auto& o : cone.offsets) CHECK(std::abs(o[0]) > std::abs(o[1]));

    // two-axis lines intersect cells off the exact lattice diagonal
    auto ax = support_mask(MeasureSpec::axis_charging(1.0, 1.5, 2), g);
    bool has_offdiag = false;
    for (const auto& o : ax.offsets)
        if (std::abs(std::abs(o[0]) - std::abs(o[1])) == 1) has_offdiag = true;
    CHECK(has_offdiag);
}

TEST_CASE("full support reaches the whole grid in one round") {
    CellGrid g = grid2d(17);
    auto res = iterate_reachable(MeasureSpec::radial_stable(1.5, 2), {}, Vec{0.3, -0.2}, g,
                                 false, nullptr, 100);
    CHECK(res.converged);
    CHECK(res.iterations <= 2);
    for (int64_t i = 0; i < g.count(); ++i) CHECK(res.mask[i] == 1);
    std::vector<uint8_t> omega(g.count(), 1);
    CHECK(covers_domain(res, g, omega).covered);
}

TEST_CASE("iteration equals the brute-force oracle cell for cell") {
    check_matches_oracle(MeasureSpec::radial_stable(1.5, 2), Vec{0.1, 0.1}, grid2d(17));
    check_matches_oracle(MeasureSpec::half_space_stable(1.5, 2, 0), Vec{0.0, 0.0}, grid2d(17));
    check_matches_oracle(
        MeasureSpec::cone_restricted(MeasureSpec::radial_stable(1.5, 2), 1.0),
        Vec{0.0, 0.0}, grid2d(17));
    check_matches_oracle(MeasureSpec::axis_charging(1.0, 1.5, 2), Vec{0.0, 0.0}, grid2d(17));
    check_matches_oracle(MeasureSpec::half_space_stable(1.2, 1, 0), Vec{0.0}, grid1d(33));
    check_matches_oracle(MeasureSpec::radial_stable(1.2, 3), Vec{0.0, 0.0, 0.0},
                         [] {
                             CellGrid g;
                             g.dim = 3;
                             for (int d = 0; d < 3; ++d) {
                                 g.lo[d] = -1;
                                 g.hi[d] = 1;
                                 g.n[d] = 9;
                             }
                             return g;
                         }());
}

TEST_CASE("half-line support leaves the negative cells unreached") {
    CellGrid g = grid1d(32);
    auto m = MeasureSpec::half_space_stable(1.5, 1, 0);
    auto res = iterate_reachable(m, {}, Vec{0.0}, g, false, nullptr, 100);
    CHECK(res.converged);
    for (int64_t i = 0; i < g.count(); ++i) {
        double x = g.center(g.coords(i))[0];
        // seed cell is the first cell with center >= 0
        if (x >= 0)
            CHECK(res.mask[i] == 1);
        else
            CHECK(res.mask[i] == 0);
    }
    std::vector<uint8_t> omega(g.count(), 1);
    auto cov = covers_domain(res, g, omega);
    CHECK_FALSE(cov.covered);
    for (int64_t i : cov.uncovered) CHECK(g.center(g.coords(i))[0] < 0);
}

TEST_CASE("two-axis measure covers the whole grid") {
    CellGrid g = grid2d(33);
    auto m = MeasureSpec::axis_charging(1.0, 1.5, 2);
    auto res = iterate_reachable(m, {}, Vec{0.0, 0.0}, g, false, nullptr, 200);
    CHECK(res.converged);
    std::vector<uint8_t> omega(g.count(), 1);
    CHECK(covers_domain(res, g, omega).covered);
}

TEST_CASE("monotone growth and first-reach indices") {
    CellGrid g = grid1d(33);
    auto m = MeasureSpec::half_space_stable(1.5, 1, 0);
    auto res = iterate_reachable(m, {}, Vec{-0.99}, g, false, nullptr, 100);
    // first_iter set exactly on reached cells, seed at round 0
    int64_t seed = g.index(g.locate(Vec{-0.99}));
    CHECK(res.first_iter[seed] == 0);
    for (int64_t i = 0; i < g.count(); ++i) {
        CHECK((res.mask[i] == 1) == (res.first_iter[i] >= 0));
        if (res.first_iter[i] > 0) CHECK(res.first_iter[i] <= res.iterations);
    }
}

TEST_CASE("omega-restricted iteration does not generate from exterior cells") {
    CellGrid g = grid1d(40, -2, 2);
    std::vector<uint8_t> omega(g.count(), 0);
    for (int64_t i = 0; i < g.count(); ++i)
        if (std::abs(g.center(g.coords(i))[0]) <= 1.0) omega[i] = 1;  // Omega = [-1,1]

    // truncate jumps to at most 0.5 by restricting the support via a family of
    // half-space supports is not expressible; use the restriction semantics
    // instead: reached exterior cells stay marked but stop generating
    auto m = MeasureSpec::half_space_stable(1.5, 1, 0);
    auto res = iterate_reachable(m, {}, Vec{0.0}, g, true, &omega, 100);
    bool exterior_reached = false;
    for (int64_t i = 0; i < g.count(); ++i) {
        double x = g.center(g.coords(i))[0];
        if (x > 1.0 && res.mask[i]) exterior_reached = true;
    }
    CHECK(exterior_reached);  // closure beyond Omega is kept

    auto unrestricted = iterate_reachable(m, {}, Vec{0.0}, g, false, nullptr, 100);
    // restricted mask is a subset of the unrestricted one
    for (int64_t i = 0; i < g.count(); ++i) CHECK(res.mask[i] <= unrestricted.mask[i]);
}

TEST_CASE("disconnected domain reached across the gap") {
    // Omega = [-1,-0.5] ∪ [0.5,1] inside a wider lattice; full-support jumps
    // cross the gap
    CellGrid g = grid1d(40, -2, 2);
    std::vector<uint8_t> omega(g.count(), 0);
    for (int64_t i = 0; i < g.count(); ++i) {
        double x = g.center(g.coords(i))[0];
        if ((x >= -1 && x <= -0.5) || (x >= 0.5 && x <= 1)) omega[i] = 1;
    }
    auto m = MeasureSpec::radial_stable(1.5, 1);
    auto res = iterate_reachable(m, {}, Vec{-0.75}, g, true, &omega, 100);
    CHECK(covers_domain(res, g, omega).covered);
}

TEST_CASE("interior-support corollary at grid resolution") {
    auto full = support_mask(MeasureSpec::radial_stable(1.5, 2), grid2d(17));
    CHECK(support_has_origin_neighborhood(full));
    auto hs = support_mask(MeasureSpec::half_space_stable(1.5, 2, 0), grid2d(17));
    CHECK_FALSE(support_has_origin_neighborhood(hs));
}

TEST_CASE("non-convergence is flagged when max_iter is hit") {
    CellGrid g = grid1d(33);
    auto m = MeasureSpec::half_space_stable(1.5, 1, 0);
    auto res = iterate_reachable(m, {}, Vec{-0.99}, g, false, nullptr, 1);
    CHECK_FALSE(res.converged);
    CHECK(res.iterations == 1);
}

TEST_CASE("push-forward support is sampled through the jump") {
    CellGrid g = grid1d(17);
    JumpMap neg{[](const Vec&, const Vec& z) { return -1.0 * z; }, 1.0};
    auto pf = MeasureSpec::push_forward(MeasureSpec::half_space_stable(1.5, 1, 0), neg);
    auto sm = support_mask(pf, g);
    for (const auto& o : sm.offsets) CHECK(o[0] <= 0);  // image of z>=0 under z -> -z
    CHECK_FALSE(sm.offsets.empty());
}

TEST_CASE("x-dependent family evaluated per generating cell") {
    // jumps point right for x < 0 and left for x >= 0: from the left edge the
    // fixpoint fills rightward but never re-crosses cells beyond the flip
    CellGrid g = grid1d(16);
    MeasureFamily fam = [](const Vec& x) {
        return x[0] < 0 ? MeasureSpec::half_space_stable(1.5, 1, 0)
                        : MeasureSpec::radial_stable(1.5, 1);
    };
    auto res = iterate_reachable(MeasureSpec::radial_stable(1.5, 1), fam, Vec{-0.9}, g,
                                 false, nullptr, 100);
    std::vector<uint8_t> omega(g.count(), 1);
    CHECK(covers_domain(res, g, omega).covered);  // right jumps reach x>=0, then full
}
