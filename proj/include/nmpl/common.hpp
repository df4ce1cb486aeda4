#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace nmpl {

inline constexpr int kMaxDim = 3;
inline constexpr double kPi = 3.14159265358979323846;

// Thrown when an operation's stated precondition is violated.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a numerical evaluation cannot converge (divergent tail,
// non-integrable singularity, unstable step, ...).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown on malformed configs / expressions.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Small fixed-capacity spatial vector, dimension <= kMaxDim.
struct Vec {
    std::array<double, kMaxDim> v{};
    int n = 0;

    Vec() = default;
    explicit Vec(int dim) : n(dim) {}
    Vec(std::initializer_list<double> xs) {
        n = static_cast<int>(xs.size());
        int i = 0;
        for (double x : xs) v[i++] = x;
    }
    static Vec zero(int dim) { return Vec(dim); }

    double& operator[](int i) { return v[i]; }
    double operator[](int i) const { return v[i]; }
    int dim() const { return n; }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < n; ++i) v[i] += o.v[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < n; ++i) v[i] -= o.v[i];
        return *this;
    }
    Vec& operator*=(double a) {
        for (int i = 0; i < n; ++i) v[i] *= a;
        return *this;
    }
    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(double a, Vec x) { return x *= a; }
};

inline double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (int i = 0; i < a.n; ++i) s += a.v[i] * b.v[i];
    return s;
}
inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

// Dense symmetric matrix, dynamic size (used up to 6x6).
class SymMat {
  public:
    SymMat() = default;
    explicit SymMat(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {}
    static SymMat identity(int n) {
        SymMat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static SymMat outer(const Vec& p) {
        SymMat m(p.dim());
        for (int i = 0; i < p.dim(); ++i)
            for (int j = 0; j < p.dim(); ++j) m(i, j) = p[i] * p[j];
        return m;
    }
    int size() const { return n_; }
    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    SymMat& operator+=(const SymMat& o) {
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    SymMat& operator-=(const SymMat& o) {
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    SymMat& operator*=(double c) {
        for (double& x : a_) x *= c;
        return *this;
    }
    friend SymMat operator+(SymMat a, const SymMat& b) { return a += b; }
    friend SymMat operator-(SymMat a, const SymMat& b) { return a -= b; }
    friend SymMat operator*(double c, SymMat a) { return a *= c; }

    double trace() const {
        double s = 0;
        for (int i = 0; i < n_; ++i) s += (*this)(i, i);
        return s;
    }
    double quad(const Vec& z) const {  // z^T A z
        double s = 0;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) s += (*this)(i, j) * z[i] * z[j];
        return s;
    }

  private:
    int n_ = 0;
    std::vector<double> a_;
};

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
std::vector<double> sym_eigenvalues(const SymMat& m);

// Deterministic RNG. Engine is mt19937_64; the uniform/normal mappings are
// written out so results do not depend on libstdc++ distribution internals.
class Rng {
  public:
    explicit Rng(uint64_t seed = 12345) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    uint64_t next_u64() {
        // splitmix64
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal() {
        // Box-Muller; cache the second value.
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        have_spare_ = true;
        spare_ = r * std::sin(2.0 * kPi * u2);
        return r * std::cos(2.0 * kPi * u2);
    }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
    }

  private:
    uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0;
};

// Global worker count (set once by the CLI; 1 keeps everything sequential).
void set_thread_count(int k);
int thread_count();

// Deterministic chunked parallel loop: fn(begin, end) over [0, n).
// Chunk boundaries depend only on n and the configured thread count.
void parallel_for(int64_t n, const std::function<void(int64_t, int64_t)>& fn);

}  // namespace nmpl
