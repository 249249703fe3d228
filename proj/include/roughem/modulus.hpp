#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace roughem {

// Regularity classes a modulus of continuity can claim. Claims are declared
// at construction sites and audited numerically by check_class.
enum class ModulusClass {
    Increasing,     // nondecreasing on (0, 1]
    Dini,           // integral of phi(s)/s near 0 converges
    DSquareConcave, // phi^2 concave
    DEpsConcave,    // phi^{2(1+eps)} concave, eps recorded on the modulus
    SlowlyVarying,  // phi(lambda t)/phi(t) -> 1 as t -> 0
};

const char* modulus_class_name(ModulusClass c);

// A modulus of continuity phi: [0, inf) -> [0, inf) with phi(0) = 0.
// Immutable value type; composite kinds share their parts.
class Modulus {
public:
    Modulus();  // zero modulus (Linear with slope 0)

    // catalog kinds
    static Modulus power(double beta);                    // t^beta, beta in (0, 1]
    static Modulus log_power(double c, double p);         // (log(c + 1/t))^-p, c >= e, p > 0
    static Modulus product(double alpha, Modulus inner);  // t^alpha * inner(t)
    static Modulus linear(double slope);                  // slope * t
    static Modulus tabulated(std::vector<double> ts, std::vector<double> values);

    // derived kinds used by library operations
    static Modulus scaled(double factor, Modulus inner);  // factor * inner(t)
    static Modulus sum(Modulus a, Modulus b);             // a(t) + b(t)
    static Modulus powered(Modulus inner, double q);      // inner(t)^q, q >= 1

    double operator()(double r) const;
    std::string describe() const;

    Modulus& claim(ModulusClass c);
    Modulus& claim_eps_concave(double eps);
    bool claims(ModulusClass c) const;
    double eps() const;  // parameter recorded by claim_eps_concave
    std::vector<ModulusClass> claimed() const;

    struct Node;
    const Node& node() const { return *node_; }

private:
    explicit Modulus(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
    std::uint32_t claim_mask_ = 0;
    double eps_ = -1.0;

    friend Modulus holder_dini_lift(const Modulus&, double);
    friend Modulus phi_tilde(const Modulus&);
};

// Integral of m(s)/s over (lower_cut, 1], composite Simpson on a log grid.
double dini_integral(const Modulus& m, double lower_cut, int quadrature_points = 2001);

struct ClassReport {
    ModulusClass flag;
    bool pass = false;
    double violation = 0.0;  // 0 when the property holds on every probe
    double location = 0.0;   // probe (scale or lambda) realizing the worst violation
};

// Samples the property behind `flag` and reports the worst violation;
// passes iff violation <= tol. Limit-type flags (Dini, SlowlyVarying) are
// decided by the trend of a geometric probe sequence, so clear members come
// out with violation exactly 0 and clear non-members with an O(1) violation.
ClassReport check_class(const Modulus& m, ModulusClass flag, int n_samples = 1000,
                        double tol = 1e-10);

// The order-alpha lift: t^alpha m(t) on (0, 1], extended by 2 c_alpha t for
// t > 1 where c_alpha = sup_{s in (0,1]} s^alpha m(s). Requires m to claim
// Increasing and SlowlyVarying.
Modulus holder_dini_lift(const Modulus& m, double alpha);

// s |-> sqrt(m(s)^2 + s); dominates both m and the square root.
Modulus phi_tilde(const Modulus& m);

struct Box {
    Eigen::VectorXd lo, hi;
};

// Monte-Carlo estimate of sup |f(x) - f(y)| / psi(|x - y|) over pairs in the
// box with |x - y| <= 1. Deterministic in (seed, n_pairs); pair i never
// changes when n_pairs grows.
double estimate_seminorm(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                         const Modulus& psi, const Box& box, int n_pairs,
                         std::uint64_t seed);

} // namespace roughem
