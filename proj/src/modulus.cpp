#include "roughem/modulus.hpp"

#include "roughem/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace roughem {

struct Modulus::Node {
    enum class Kind { Power, LogPower, Product, Linear, Tabulated, Scaled, Sum, Powered, SqrtShift };
    Kind kind;
    double a = 0.0;           // beta | c | alpha | slope | factor | q
    double b = 0.0;           // p (LogPower)
    double tail_slope = -1.0; // Product only: >= 0 activates the linear branch past t = 1
    std::shared_ptr<const Node> inner, inner2;
    std::vector<double> ts, vs; // Tabulated
};

namespace {

using Node = Modulus::Node;
using Kind = Node::Kind;

double eval_node(const Node& n, double r) {
    if (r < 0.0) throw std::domain_error("modulus: negative argument");
    if (r == 0.0) return 0.0;
    switch (n.kind) {
    case Kind::Power:
        return std::pow(r, n.a);
    case Kind::LogPower:
        return std::pow(std::log(n.a + 1.0 / r), -n.b);
    case Kind::Product:
        if (n.tail_slope >= 0.0 && r > 1.0) return n.tail_slope * r;
        return std::pow(r, n.a) * eval_node(*n.inner, r);
    case Kind::Linear:
        return n.a * r;
    case Kind::Tabulated: {
        if (r > n.ts.back())
            throw std::domain_error("modulus: argument beyond tabulated range");
        auto it = std::upper_bound(n.ts.begin(), n.ts.end(), r);
        const std::size_t hi = static_cast<std::size_t>(it - n.ts.begin());
        const std::size_t lo = hi - 1;
        if (hi == n.ts.size()) return n.vs.back();
        const double w = (r - n.ts[lo]) / (n.ts[hi] - n.ts[lo]);
        return n.vs[lo] + w * (n.vs[hi] - n.vs[lo]);
    }
    case Kind::Scaled:
        return n.a * eval_node(*n.inner, r);
    case Kind::Sum:
        return eval_node(*n.inner, r) + eval_node(*n.inner2, r);
    case Kind::Powered:
        return std::pow(eval_node(*n.inner, r), n.a);
    case Kind::SqrtShift: {
        const double v = eval_node(*n.inner, r);
        return std::sqrt(v * v + r);
    }
    }
    throw std::logic_error("modulus: unknown kind");
}

std::string describe_node(const Node& n) {
    std::ostringstream os;
    switch (n.kind) {
    case Kind::Power: os << "Power(" << n.a << ")"; break;
    case Kind::LogPower: os << "LogPower(" << n.a << ", " << n.b << ")"; break;
    case Kind::Product:
        os << "Product(" << n.a << ", " << describe_node(*n.inner);
        if (n.tail_slope >= 0.0) os << "; tail " << n.tail_slope << " t";
        os << ")";
        break;
    case Kind::Linear: os << "Linear(" << n.a << ")"; break;
    case Kind::Tabulated: os << "Tabulated[" << n.ts.size() << "]"; break;
    case Kind::Scaled: os << n.a << "*" << describe_node(*n.inner); break;
    case Kind::Sum: os << describe_node(*n.inner) << " + " << describe_node(*n.inner2); break;
    case Kind::Powered: os << "(" << describe_node(*n.inner) << ")^" << n.a; break;
    case Kind::SqrtShift: os << "sqrt((" << describe_node(*n.inner) << ")^2 + t)"; break;
    }
    return os.str();
}

std::shared_ptr<const Node> make_node(Node n) {
    return std::make_shared<const Node>(std::move(n));
}

std::uint32_t mask_of(ModulusClass c) { return 1u << static_cast<int>(c); }

} // namespace

Modulus::Modulus() : node_(make_node([] { Node n; n.kind = Kind::Linear; n.a = 0.0; return n; }())) {}

Modulus Modulus::power(double beta) {
    if (!(beta > 0.0 && beta <= 1.0))
        throw std::invalid_argument("Modulus::power: beta must lie in (0, 1]");
    Node n; n.kind = Kind::Power; n.a = beta;
    return Modulus(make_node(std::move(n)));
}

Modulus Modulus::log_power(double c, double p) {
    if (!(c >= std::exp(1.0)))
        throw std::invalid_argument("Modulus::log_power: c must be >= e");
    if (!(p > 0.0))
        throw std::invalid_argument("Modulus::log_power: p must be positive");
    Node n; n.kind = Kind::LogPower; n.a = c; n.b = p;
    return Modulus(make_node(std::move(n)));
}

Modulus Modulus::product(double alpha, Modulus inner) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("Modulus::product: alpha must lie in [0, 1)");
    Node n; n.kind = Kind::Product; n.a = alpha; n.inner = inner.node_;
    return Modulus(make_node(std::move(n)));
}

Modulus Modulus::linear(double slope) {
    if (slope < 0.0) throw std::invalid_argument("Modulus::linear: negative slope");
    Node n; n.kind = Kind::Linear; n.a = slope;
    return Modulus(make_node(std::move(n)));
}

Modulus Modulus::tabulated(std::vector<double> ts, std::vector<double> values) {
    if (ts.size() != values.size() || ts.size() < 2)
        throw std::invalid_argument("Modulus::tabulated: need matching arrays, length >= 2");
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (!(ts[i] > ts[i - 1]))
            throw std::invalid_argument("Modulus::tabulated: abscissae must increase");
    if (ts.front() < 0.0)
        throw std::invalid_argument("Modulus::tabulated: negative abscissa");
    for (double v : values)
        if (v < 0.0) throw std::invalid_argument("Modulus::tabulated: negative value");
    if (ts.front() > 0.0) {  // anchor the interpolant at the origin
        ts.insert(ts.begin(), 0.0);
        values.insert(values.begin(), 0.0);
    } else if (values.front() != 0.0) {
        throw std::invalid_argument("Modulus::tabulated: value at 0 must be 0");
    }
    Node n; n.kind = Kind::Tabulated; n.ts = std::move(ts); n.vs = std::move(values);
    return Modulus(make_node(std::move(n)));
}

Modulus Modulus::scaled(double factor, Modulus inner) {
    if (factor < 0.0) throw std::invalid_argument("Modulus::scaled: negative factor");
    Node n; n.kind = Kind::Scaled; n.a = factor; n.inner = inner.node_;
    return Modulus(make_node(std::move(n)));
}

Modulus Modulus::sum(Modulus a, Modulus b) {
    Node n; n.kind = Kind::Sum; n.inner = a.node_; n.inner2 = b.node_;
    return Modulus(make_node(std::move(n)));
}

Modulus Modulus::powered(Modulus inner, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("Modulus::powered: q must be >= 1");
    Node n; n.kind = Kind::Powered; n.a = q; n.inner = inner.node_;
    return Modulus(make_node(std::move(n)));
}

double Modulus::operator()(double r) const { return eval_node(*node_, r); }

std::string Modulus::describe() const { return describe_node(*node_); }

Modulus& Modulus::claim(ModulusClass c) {
    if (c == ModulusClass::DEpsConcave && eps_ < 0.0)
        throw std::invalid_argument("Modulus::claim: DEpsConcave needs claim_eps_concave(eps)");
    claim_mask_ |= mask_of(c);
    return *this;
}

Modulus& Modulus::claim_eps_concave(double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("Modulus::claim_eps_concave: eps must lie in (0, 1)");
    eps_ = eps;
    claim_mask_ |= mask_of(ModulusClass::DEpsConcave);
    return *this;
}

bool Modulus::claims(ModulusClass c) const { return claim_mask_ & mask_of(c); }

double Modulus::eps() const {
    if (eps_ < 0.0) throw std::logic_error("Modulus::eps: no DEpsConcave parameter recorded");
    return eps_;
}

std::vector<ModulusClass> Modulus::claimed() const {
    std::vector<ModulusClass> out;
    for (ModulusClass c : {ModulusClass::Increasing, ModulusClass::Dini,
                           ModulusClass::DSquareConcave, ModulusClass::DEpsConcave,
                           ModulusClass::SlowlyVarying})
        if (claims(c)) out.push_back(c);
    return out;
}

const char* modulus_class_name(ModulusClass c) {
    switch (c) {
    case ModulusClass::Increasing: return "Increasing";
    case ModulusClass::Dini: return "Dini";
    case ModulusClass::DSquareConcave: return "DSquareConcave";
    case ModulusClass::DEpsConcave: return "DEpsConcave";
    case ModulusClass::SlowlyVarying: return "SlowlyVarying";
    }
    return "?";
}

double dini_integral(const Modulus& m, double lower_cut, int quadrature_points) {
    if (!(lower_cut > 0.0 && lower_cut < 1.0))
        throw std::domain_error("dini_integral: lower_cut must lie in (0, 1)");
    if (quadrature_points < 3)
        throw std::invalid_argument("dini_integral: need at least 3 quadrature points");
    // substitute s = e^u: integral of m(e^u) du over [log lower_cut, 0]
    int np = quadrature_points | 1;  // Simpson needs an odd count
    const double u0 = std::log(lower_cut);
    const double h = -u0 / (np - 1);
    double acc = m(lower_cut) + m(1.0);
    for (int i = 1; i < np - 1; ++i) {
        const double w = (i % 2 == 1) ? 4.0 : 2.0;
        acc += w * m(std::exp(u0 + h * i));
    }
    return acc * h / 3.0;
}

namespace {

// probe scales for sampled class checks: log-spaced and uniform points of (0, 1]
std::vector<double> probe_scales(int n_samples) {
    std::vector<double> s;
    s.reserve(2 * static_cast<std::size_t>(n_samples));
    const int half = std::max(2, n_samples / 2);
    for (int i = 0; i < half; ++i)
        s.push_back(std::pow(10.0, -9.0 + 9.0 * i / (half - 1.0)));
    for (int i = 1; i <= half; ++i)
        s.push_back(static_cast<double>(i) / half);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

ClassReport check_increasing(const Modulus& m, int n_samples) {
    ClassReport rep{ModulusClass::Increasing, true, 0.0, 0.0};
    auto s = probe_scales(n_samples);
    double prev = m(s.front());
    for (std::size_t i = 1; i < s.size(); ++i) {
        const double cur = m(s[i]);
        const double v = prev - cur;
        if (v > rep.violation) { rep.violation = v; rep.location = s[i]; }
        prev = cur;
    }
    return rep;
}

ClassReport check_concave_power(const Modulus& m, ModulusClass flag, double q, int n_samples) {
    ClassReport rep{flag, true, 0.0, 0.0};
    auto s = probe_scales(n_samples);
    std::vector<double> f(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) f[i] = std::pow(m(s[i]), q);
    // midpoint concavity over all sampled pairs
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            const double mid = 0.5 * (s[i] + s[j]);
            const double v = 0.5 * (f[i] + f[j]) - std::pow(m(mid), q);
            if (v > rep.violation) { rep.violation = v; rep.location = mid; }
        }
    }
    return rep;
}

// Tail pieces a_k = integral of m(s)/s over (4^-(k+1), 4^-k]. The series
// sum_k a_k equals the Dini integral; convergence is decided by the Raabe
// index k (a_k / a_{k+1} - 1), which separates convergent (index >= 3/2,
// attained with margin by every power and squared-log modulus) from
// divergent tails (index <= 1).
ClassReport check_dini(const Modulus& m, int n_samples) {
    ClassReport rep{ModulusClass::Dini, true, 0.0, 0.0};
    const double ratio = 4.0;
    const int k0 = 8, K = 48;
    const int pts = std::max(201, n_samples | 1);
    std::vector<double> a;
    a.reserve(K - k0);
    for (int k = k0; k < K; ++k) {
        const double lo = std::pow(ratio, -(k + 1));
        const double hi = std::pow(ratio, -k);
        // Simpson on the log grid for one piece
        const double u0 = std::log(lo), u1 = std::log(hi);
        const double h = (u1 - u0) / (pts - 1);
        double acc = m(lo) + m(hi);
        for (int i = 1; i < pts - 1; ++i)
            acc += ((i % 2 == 1) ? 4.0 : 2.0) * m(std::exp(u0 + h * i));
        a.push_back(acc * h / 3.0);
    }
    const double last = a.back();
    rep.location = std::pow(ratio, -(K - 1));
    if (last <= 1e-13) return rep;  // geometric decay, tail converged outright
    // Raabe index from the second half of the piece sequence
    std::vector<double> idx;
    for (std::size_t i = a.size() / 2; i + 1 < a.size(); ++i) {
        const double k = static_cast<double>(k0 + i);
        if (a[i + 1] <= 0.0) return rep;
        idx.push_back(k * (a[i] / a[i + 1] - 1.0));
    }
    std::nth_element(idx.begin(), idx.begin() + idx.size() / 2, idx.end());
    const double med = idx[idx.size() / 2];
    const double threshold = 1.5;
    if (med < threshold) { rep.violation = threshold - med; rep.pass = false; }
    return rep;
}

ClassReport check_slowly_varying(const Modulus& m, int n_samples) {
    (void)n_samples;
    ClassReport rep{ModulusClass::SlowlyVarying, true, 0.0, 0.0};
    const double ratio = 4.0;
    const int k0 = 8, K = 60;
    for (double lam : {0.0625, 0.25, 4.0, 16.0}) {
        std::vector<double> d;
        for (int k = k0; k < K; ++k) {
            const double t = std::pow(ratio, -k);
            if (lam * t > 1.0) continue;
            const double base = m(t);
            if (base == 0.0) continue;
            d.push_back(std::abs(m(lam * t) / base - 1.0));
        }
        if (d.size() < 4) continue;
        const double dK = d.back();
        if (dK <= 1e-12) continue;
        const double dH = d[d.size() / 2];
        // a vanishing limit keeps shrinking; a nonzero limit plateaus
        const double shrink = dK / std::max(dH, 1e-300);
        if (shrink > 0.75 && dK > rep.violation) { rep.violation = dK; rep.location = lam; }
    }
    return rep;
}

} // namespace

ClassReport check_class(const Modulus& m, ModulusClass flag, int n_samples, double tol) {
    if (n_samples < 8) throw std::invalid_argument("check_class: n_samples too small");
    ClassReport rep;
    switch (flag) {
    case ModulusClass::Increasing: rep = check_increasing(m, n_samples); break;
    case ModulusClass::DSquareConcave: rep = check_concave_power(m, flag, 2.0, n_samples); break;
    case ModulusClass::DEpsConcave:
        rep = check_concave_power(m, flag, 2.0 * (1.0 + m.eps()), n_samples);
        break;
    case ModulusClass::Dini: rep = check_dini(m, n_samples); break;
    case ModulusClass::SlowlyVarying: rep = check_slowly_varying(m, n_samples); break;
    default: throw std::invalid_argument("check_class: unknown class flag");
    }
    rep.pass = rep.violation <= tol;
    return rep;
}

Modulus holder_dini_lift(const Modulus& m, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("holder_dini_lift: alpha must lie in (0, 1)");
    if (!m.claims(ModulusClass::Increasing) || !m.claims(ModulusClass::SlowlyVarying))
        throw std::invalid_argument(
            "holder_dini_lift: modulus must claim Increasing and SlowlyVarying");
    // c_alpha = sup_{s in (0,1]} s^alpha m(s), coarse log grid plus local refinement
    auto objective = [&](double s) { return std::pow(s, alpha) * m(s); };
    const int n = 10000;
    double best = objective(1.0), best_s = 1.0;
    for (int i = 0; i < n; ++i) {
        const double s = std::pow(10.0, -12.0 + 12.0 * i / (n - 1.0));
        const double v = objective(s);
        if (v > best) { best = v; best_s = s; }
    }
    double lo = best_s / std::pow(10.0, 12.0 / (n - 1.0));
    double hi = std::min(1.0, best_s * std::pow(10.0, 12.0 / (n - 1.0)));
    for (int round = 0; round < 4; ++round) {
        const int nn = 128;
        double b2 = best, s2 = best_s;
        for (int i = 0; i <= nn; ++i) {
            const double s = lo + (hi - lo) * i / nn;
            if (s <= 0.0) continue;
            const double v = objective(s);
            if (v > b2) { b2 = v; s2 = s; }
        }
        best = b2;
        const double w = (hi - lo) / nn;
        lo = std::max(s2 - w, 1e-300);
        hi = std::min(s2 + w, 1.0);
        best_s = s2;
    }
    Modulus::Node n2;
    n2.kind = Modulus::Node::Kind::Product;
    n2.a = alpha;
    n2.inner = m.node_;
    n2.tail_slope = 2.0 * best;
    Modulus out(std::make_shared<const Modulus::Node>(std::move(n2)));
    out.claim(ModulusClass::Increasing);
    return out;
}

Modulus phi_tilde(const Modulus& m) {
    Modulus::Node n;
    n.kind = Modulus::Node::Kind::SqrtShift;
    n.inner = m.node_;
    Modulus out(std::make_shared<const Modulus::Node>(std::move(n)));
    out.claim(ModulusClass::Increasing);
    return out;
}

double estimate_seminorm(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                         const Modulus& psi, const Box& box, int n_pairs,
                         std::uint64_t seed) {
    if (box.lo.size() != box.hi.size() || box.lo.size() == 0)
        throw std::invalid_argument("estimate_seminorm: malformed box");
    for (int d = 0; d < box.lo.size(); ++d)
        if (!(box.lo[d] < box.hi[d]))
            throw std::invalid_argument("estimate_seminorm: empty box");
    const int dim = static_cast<int>(box.lo.size());
    double sup = 0.0;
    Eigen::VectorXd x(dim), y(dim), u(dim);
    for (int i = 0; i < n_pairs; ++i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        for (int d = 0; d < dim; ++d)
            x[d] = box.lo[d] + (box.hi[d] - box.lo[d]) * rng.uniform(1, d);
        double norm2 = 0.0;
        for (int d = 0; d < dim; ++d) {
            u[d] = rng.normal(2, d);
            norm2 += u[d] * u[d];
        }
        const double radius = rng.uniform(3, 0);  // displacement length in (0, 1)
        const double scale = radius / std::max(std::sqrt(norm2), 1e-300);
        for (int d = 0; d < dim; ++d)
            y[d] = std::clamp(x[d] + scale * u[d], box.lo[d], box.hi[d]);
        const double dist = (x - y).norm();
        if (dist <= 0.0) continue;
        const double denom = psi(dist);
        if (denom <= 0.0) continue;
        const double ratio = (f(x) - f(y)).norm() / denom;
        if (ratio > sup) sup = ratio;
    }
    return sup;
}

} // namespace roughem
