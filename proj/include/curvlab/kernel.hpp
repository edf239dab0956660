#pragma once

#include "curvlab/series.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace curvlab {

struct Domain {
    enum class Kind { any, disc, polydisc, ball, matrix_ball2 };
    Kind kind = Kind::any;
    std::size_t m = 0;

    static Domain disc() { return {Kind::disc, 1}; }
    static Domain polydisc(std::size_t m) { return {Kind::polydisc, m}; }
    static Domain ball(std::size_t m) { return {Kind::ball, m}; }
    static Domain matrix_ball2() { return {Kind::matrix_ball2, 4}; }

    std::string name() const;
    bool contains(const Point& p) const;
    // Disc, polydisc(1) and ball(1) are the same unit disc.
    bool compatible(const Domain& other) const;

    bool operator==(const Domain&) const = default;
};

// Largest singular value of a 2x2 matrix given row-major.
double operator_norm_2x2(const Point& entries);

class KernelSpec;

namespace node {

struct Szego {};
struct SzegoPolydisc { std::size_t m; };
struct DruryArveson { std::size_t m; };
// sum_{k<n} coeffs_k (z conj w)^k + tail * sum_{k>=n} (z conj w)^k
struct Diagonal {
    std::vector<double> coeffs;
    double tail = 0.0;
};
struct DetBall2 {};
struct Constant { double value; };
struct SeriesAtom { HermitianSeries series; };
struct Product { std::shared_ptr<const KernelSpec> left, right; };
struct Power { std::shared_ptr<const KernelSpec> base; double exponent; };
// Multiplication by (1 - z conj w), prod (1 - z_i conj w_i) or 1 - <z, w>.
struct Contract { std::shared_ptr<const KernelSpec> inner; };

using Node = std::variant<Szego, SzegoPolydisc, DruryArveson, Diagonal, DetBall2, Constant,
                          SeriesAtom, Product, Power, Contract>;

} // namespace node

// Immutable expression tree over the built-in kernel families.
class KernelSpec {
public:
    const node::Node& node() const { return node_; }
    const Domain& domain() const { return domain_; }

    friend KernelSpec szego_disc();
    friend KernelSpec szego_polydisc(std::size_t m);
    friend KernelSpec drury_arveson(std::size_t m);
    friend KernelSpec diagonal(std::vector<double> coeffs, double tail);
    friend KernelSpec det_ball_2x2();
    friend KernelSpec constant(double c);
    friend KernelSpec series_kernel(HermitianSeries s, Domain domain);
    friend KernelSpec product(const KernelSpec& a, const KernelSpec& b);
    friend KernelSpec power(const KernelSpec& base, double t);
    friend KernelSpec contract(const KernelSpec& inner);

private:
    KernelSpec(node::Node n, Domain d) : node_(std::move(n)), domain_(d) {}

    node::Node node_;
    Domain domain_;
};

KernelSpec szego_disc();
KernelSpec szego_polydisc(std::size_t m);
KernelSpec drury_arveson(std::size_t m);
KernelSpec diagonal(std::vector<double> coeffs, double tail = 0.0);
KernelSpec det_ball_2x2();
KernelSpec constant(double c);
// Series atoms are evaluated through the series itself (guard radius applies).
KernelSpec series_kernel(HermitianSeries s, Domain domain);
KernelSpec product(const KernelSpec& a, const KernelSpec& b);
KernelSpec power(const KernelSpec& base, double t);
KernelSpec contract(const KernelSpec& inner);

// The Szego-type kernel of a domain: szego, szego_poly(m) or da(m).
KernelSpec reference_kernel(const Domain& d);

bool structurally_equal(const KernelSpec& a, const KernelSpec& b);

// DSL text that parses back to the same tree.
std::string pretty_print(const KernelSpec& k);

// Kernel value K(z, w).
Complex eval(const KernelSpec& k, const Point& z, const Point& w);

// Logarithm continued along the kernel's structure: logs of the factor atoms
// are summed, powers scale them. Atoms without a closed-form logarithm use the
// principal branch and throw BranchError when Re K <= 0.
Complex log_eval(const KernelSpec& k, const Point& z, const Point& w);

// Taylor expansion about (w0, w0) in z - w0 and conj(w - w0).
HermitianSeries taylor_expand(const KernelSpec& k, const Point& w0, int order);

// Expansion of the kernel normalized at w0: a_00 = 1, a_I0 = a_0J = 0.
HermitianSeries normalize_at(const KernelSpec& k, const Point& w0, int order);

// Diagonal derivative data at w:
//   value = K(w, w), grad_i = d/dz_i K(z, w)|_{z=w}, hess_ij = d/dz_i d/dconj(w_j) K.
struct KernelJet {
    double value = 0.0;
    std::vector<Complex> grad;
    std::vector<std::vector<Complex>> hess;
};
KernelJet derivatives(const KernelSpec& k, const Point& w);

// Coefficients a_n of a one-variable kernel expanded at 0, if its expansion is
// diagonal (no z^i conj(w)^j with i != j); otherwise nullopt.
std::optional<std::vector<double>> diagonal_coefficients(const KernelSpec& k, int order);

} // namespace curvlab
