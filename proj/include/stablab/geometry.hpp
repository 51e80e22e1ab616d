#ifndef STABLAB_GEOMETRY_HPP
#define STABLAB_GEOMETRY_HPP

#include <stablab/cones.hpp>
#include <stablab/rational.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace stablab {

/// A (1,1)-class as an exact coordinate vector in the presentation basis.
class CohClass {
   public:
    CohClass() = default;
    explicit CohClass(std::vector<Rational> coords) : c_(std::move(coords)) {}
    CohClass(std::initializer_list<Rational> coords) : c_(coords) {}

    std::size_t size() const { return c_.size(); }
    const Rational& operator[](std::size_t i) const { return c_[i]; }
    Rational& operator[](std::size_t i) { return c_[i]; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
    }

    friend CohClass operator+(const CohClass& a, const CohClass& b) {
        if (a.size() != b.size()) throw arity_error("class coordinate sizes differ");
        std::vector<Rational> r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a.c_[i] + b.c_[i];
        return CohClass(std::move(r));
    }
    friend CohClass operator-(const CohClass& a, const CohClass& b) {
        if (a.size() != b.size()) throw arity_error("class coordinate sizes differ");
        std::vector<Rational> r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a.c_[i] - b.c_[i];
        return CohClass(std::move(r));
    }
    friend CohClass operator*(const Rational& s, const CohClass& a) {
        std::vector<Rational> r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a.c_[i];
        return CohClass(std::move(r));
    }
    friend bool operator==(const CohClass& a, const CohClass& b) { return a.c_ == b.c_; }
    friend bool operator!=(const CohClass& a, const CohClass& b) { return !(a == b); }

   private:
    std::vector<Rational> c_;
};

/// Symmetric k-linear form on the basis, stored by exponent monomial
/// (entry [2,1] on a 2-element basis is the value on e0 e0 e1).  Monomials
/// not stored are zero.
class SymTensor {
   public:
    SymTensor() = default;
    SymTensor(int arity, std::size_t basis_size) : arity_(arity), basis_(basis_size) {}

    int arity() const { return arity_; }
    std::size_t basis_size() const { return basis_; }
    const std::map<std::vector<int>, Rational>& entries() const { return e_; }
    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](const auto& kv) { return kv.second == 0; });
    }

    void set(std::vector<int> monomial, Rational value) {
        if (monomial.size() != basis_)
            throw schema_error("tensor monomial length does not match basis size");
        int total = std::accumulate(monomial.begin(), monomial.end(), 0);
        if (total != arity_) throw arity_error("tensor monomial degree does not match arity");
        for (int x : monomial)
            if (x < 0) throw schema_error("negative exponent in tensor monomial");
        auto it = e_.find(monomial);
        if (it != e_.end() && it->second != value)
            throw schema_error("asymmetric tensor: duplicate monomial with conflicting values");
        if (value != 0) e_[std::move(monomial)] = std::move(value);
    }

    /// Full multilinear evaluation on arity() many classes.
    Rational evaluate(const std::vector<CohClass>& classes) const {
        if (static_cast<int>(classes.size()) != arity_)
            throw arity_error("tensor arity mismatch: expected " + std::to_string(arity_) +
                              " classes, got " + std::to_string(classes.size()));
        std::map<std::vector<int>, Rational> prod;
        prod[std::vector<int>(basis_, 0)] = Rational(1);
        for (const auto& cls : classes) {
            if (cls.size() != basis_) throw arity_error("class coordinate size does not match basis");
            std::map<std::vector<int>, Rational> next;
            for (const auto& [mono, coeff] : prod) {
                for (std::size_t i = 0; i < basis_; ++i) {
                    if (cls[i] == 0) continue;
                    std::vector<int> m = mono;
                    ++m[i];
                    next[std::move(m)] += coeff * cls[i];
                }
            }
            prod = std::move(next);
        }
        Rational total(0);
        for (const auto& [mono, coeff] : prod) {
            auto it = e_.find(mono);
            if (it != e_.end()) total += coeff * it->second;
        }
        return total;
    }

    friend bool operator==(const SymTensor& a, const SymTensor& b) {
        return a.arity_ == b.arity_ && a.basis_ == b.basis_ && a.e_ == b.e_;
    }
    friend bool operator!=(const SymTensor& a, const SymTensor& b) { return !(a == b); }

    /// Evaluation on a power product: classes[i] repeated powers[i] times.
    Rational evaluate_powers(const std::vector<std::pair<CohClass, int>>& factors) const {
        std::vector<CohClass> classes;
        for (const auto& [cls, pow] : factors)
            for (int k = 0; k < pow; ++k) classes.push_back(cls);
        return evaluate(classes);
    }

   private:
    int arity_ = 0;
    std::size_t basis_ = 0;
    std::map<std::vector<int>, Rational> e_;
};

/// A candidate destabilizer: a named subvariety presented through its
/// restricted intersection numbers.
struct SubvarietyCandidate {
    std::string name;
    int dim = 0;
    SymTensor restricted;  // arity == dim
    std::vector<std::string> tags;

    friend bool operator==(const SubvarietyCandidate&, const SubvarietyCandidate&) = default;
};

/// Declared region in which the candidate list provably contains every
/// destabilizer.  The only supported statement family asserts completeness
/// whenever the shifted slope classes land inside the higher modified
/// cones, which is checked per (alpha, beta) query.
struct CompleteRegion {
    std::string statement = "modified-hypotheses";
    Rational lambda = Rational(0);

    friend bool operator==(const CompleteRegion&, const CompleteRegion&) = default;
};

/// Finite presentation of a compact Kaehler manifold: intersection ring
/// data on a chosen span of (1,1)-classes, positivity cones for that span,
/// and an explicit candidate list.
struct ManifoldPresentation {
    std::string name;
    int dim = 0;
    std::vector<std::string> basis;
    SymTensor tensor;  // arity == dim
    std::vector<ConeDescription> cones;
    std::vector<SubvarietyCandidate> candidates;
    std::vector<CompleteRegion> complete_regions;

    std::size_t basis_size() const { return basis.size(); }

    const ConeDescription* find_cone(ConeKind kind, int p = 0) const {
        for (const auto& c : cones)
            if (c.kind == kind && (kind != ConeKind::Modified || c.p == p)) return &c;
        return nullptr;
    }

    const SubvarietyCandidate* find_candidate(const std::string& candidate_name) const {
        for (const auto& v : candidates)
            if (v.name == candidate_name) return &v;
        return nullptr;
    }

    CohClass basis_class(std::size_t index) const {
        std::vector<Rational> c(basis.size(), Rational(0));
        c[index] = 1;
        return CohClass(std::move(c));
    }

    friend bool operator==(const ManifoldPresentation&, const ManifoldPresentation&) = default;
};

inline Rational intersect(const ManifoldPresentation& m, const std::vector<CohClass>& classes) {
    if (static_cast<int>(classes.size()) != m.dim)
        throw arity_error("intersect: expected " + std::to_string(m.dim) + " classes");
    return m.tensor.evaluate(classes);
}

inline Rational intersect_on(const SubvarietyCandidate& v, const std::vector<CohClass>& classes) {
    if (static_cast<int>(classes.size()) != v.dim)
        throw arity_error("intersect_on: expected " + std::to_string(v.dim) + " classes for " + v.name);
    return v.restricted.evaluate(classes);
}

/// integral over X of alpha^i beta^j, i + j == dim
inline Rational pairing(const ManifoldPresentation& m, const CohClass& a, int i, const CohClass& b,
                        int j) {
    if (i + j != m.dim) throw arity_error("pairing degree does not match dimension");
    return m.tensor.evaluate_powers({{a, i}, {b, j}});
}

/// integral over V of alpha^i beta^j, i + j == dim V
inline Rational pairing_on(const SubvarietyCandidate& v, const CohClass& a, int i, const CohClass& b,
                           int j) {
    if (i + j != v.dim) throw arity_error("pairing_on degree does not match candidate dimension");
    return v.restricted.evaluate_powers({{a, i}, {b, j}});
}

namespace detail {

/// Intersection numbers of the projective bundle over a curve with weight
/// sequence a_1 < ... < a_(n-1) and base degree d:
///   H^n = d * sum(a_i),  H^(n-1) L = d,  all lower H-powers vanish.
inline SymTensor wu_tensor(int n, int d, const std::vector<int>& weights) {
    SymTensor t(n, 2);  // basis (L, H)
    Integer s(0);
    for (int a : weights) s += a;
    t.set({0, n}, Rational(Integer(d) * s));
    t.set({1, n - 1}, Rational(d));
    return t;
}

}  // namespace detail

/// The projective-bundle family P(O + L^(-a_1) + ... + L^(-a_(n-1))) over a
/// degree-d polarized curve.  Basis (L, H); candidates are the truncated
/// subbundles, the zero section, the weight divisors and a fiber line; the
/// modified cones on span(L, H) are cut out by a + a_(p-1) b > 0, b > 0.
inline ManifoldPresentation wu_bundle(int d, const std::vector<int>& weights) {
    if (d < 1) throw precondition_error("wu_bundle: d must be positive");
    if (weights.empty()) throw precondition_error("wu_bundle: needs at least one weight");
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < 1) throw precondition_error("wu_bundle: weights must be positive");
        if (i > 0 && weights[i] <= weights[i - 1])
            throw precondition_error("wu_bundle: weights must be strictly increasing");
    }
    const int n = static_cast<int>(weights.size()) + 1;

    ManifoldPresentation m;
    m.name = "wu(" + std::to_string(d) + ";";
    for (std::size_t i = 0; i < weights.size(); ++i)
        m.name += (i ? "," : "") + std::to_string(weights[i]);
    m.name += ")";
    m.dim = n;
    m.basis = {"L", "H"};
    m.tensor = detail::wu_tensor(n, d, weights);

    // truncated bundles V_p of dimension p+1; V_(n-2) is the weight divisor
    // of the top weight, so the divisor list below stops at n-2
    for (int p = 1; p <= n - 2; ++p) {
        SubvarietyCandidate v;
        v.name = (n == 3) ? "S" : "V" + std::to_string(p);
        v.dim = p + 1;
        v.restricted = detail::wu_tensor(p + 1, d, std::vector<int>(weights.begin(), weights.begin() + p));
        v.tags = {"truncated-bundle", "component-of-EnK"};
        m.candidates.push_back(std::move(v));
    }
    {
        SubvarietyCandidate c;
        c.name = "C";
        c.dim = 1;
        c.restricted = SymTensor(1, 2);
        c.restricted.set({1, 0}, Rational(d));  // L restricts with degree d, H trivially
        c.tags = {"section", "component-of-EnK"};
        m.candidates.push_back(std::move(c));
    }
    for (int i = 1; i <= n - 2; ++i) {
        // divisor of class H - a_i L
        SubvarietyCandidate v;
        v.name = "D" + std::to_string(i);
        v.dim = n - 1;
        SymTensor t(n - 1, 2);
        Integer s(0);
        for (int a : weights) s += a;
        t.set({0, n - 1}, Rational(Integer(d) * (s - weights[static_cast<std::size_t>(i - 1)])));
        t.set({1, n - 2}, Rational(d));
        v.restricted = t;
        v.tags = {"divisor"};
        m.candidates.push_back(std::move(v));
    }
    {
        SubvarietyCandidate f;
        f.name = "F";
        f.dim = 1;
        f.restricted = SymTensor(1, 2);
        f.restricted.set({0, 1}, Rational(1));  // fiber line: H degree 1, L degree 0
        f.tags = {"fiber-line"};
        m.candidates.push_back(std::move(f));
    }

    auto strict_pair = [](Rational cl, Rational ch) {
        LinearInequality q;
        q.coeffs = {std::move(cl), std::move(ch)};
        q.strict = true;
        return q;
    };
    for (int p = 1; p <= n; ++p) {
        ConeDescription cone;
        cone.kind = ConeKind::Modified;
        cone.p = p;
        int a_prev = (p >= 2) ? weights[static_cast<std::size_t>(p - 2)] : 0;
        cone.inequalities = {strict_pair(1, a_prev), strict_pair(0, 1)};
        m.cones.push_back(cone);
        if (p == 1) {
            ConeDescription k = cone;
            k.kind = ConeKind::Kahler;
            k.p = 0;
            m.cones.push_back(k);
        }
        if (p == n) {
            ConeDescription b = cone;
            b.kind = ConeKind::Big;
            b.p = 0;
            m.cones.push_back(b);
        }
    }
    {
        ConeDescription nef;
        nef.kind = ConeKind::Nef;
        nef.inequalities = {LinearInequality{{Rational(1), Rational(0)}, false},
                            LinearInequality{{Rational(0), Rational(1)}, false}};
        m.cones.push_back(nef);
        ConeDescription pseff;
        pseff.kind = ConeKind::Pseff;
        pseff.inequalities = {LinearInequality{{Rational(1), Rational(weights.back())}, false},
                              LinearInequality{{Rational(0), Rational(1)}, false}};
        m.cones.push_back(pseff);
    }

    m.complete_regions.push_back(CompleteRegion{});
    return m;
}

/// Blow-up of projective n-space at a point.  Basis (H, E) with H^n = 1,
/// E^n = (-1)^(n-1) and vanishing mixed products; candidates are the
/// hyperplane avoiding the point, the strict transform of one through it,
/// the exceptional divisor and a line inside it.  Only the cones stated
/// for this family are provided; there is no modified-cone data for
/// intermediate p and no completeness region.
inline ManifoldPresentation blowup_pn(int n) {
    if (n < 2) throw precondition_error("blowup_pn: n must be at least 2");
    ManifoldPresentation m;
    m.name = "blowup_p" + std::to_string(n);
    m.dim = n;
    m.basis = {"H", "E"};
    m.tensor = SymTensor(n, 2);
    m.tensor.set({n, 0}, Rational(1));
    m.tensor.set({0, n}, Rational((n % 2 == 1) ? 1 : -1));

    auto divisor_candidate = [&](const std::string& name, Rational h, Rational e,
                                 std::vector<std::string> tags) {
        SubvarietyCandidate v;
        v.name = name;
        v.dim = n - 1;
        SymTensor t(n - 1, 2);
        t.set({n - 1, 0}, h);                                      // pairs with H^(n-1)
        t.set({0, n - 1}, e * Rational((n % 2 == 1) ? 1 : -1));    // pairs with E^(n-1)
        v.restricted = t;
        v.tags = std::move(tags);
        return v;
    };
    // divisor class xH + yE pairs as x on H^(n-1) and y * E^n on E^(n-1)
    m.candidates.push_back(divisor_candidate("Hbar", Rational(1), Rational(0), {"hyperplane"}));
    m.candidates.push_back(divisor_candidate("P", Rational(1), Rational(-1), {"strict-transform"}));
    m.candidates.push_back(divisor_candidate("E", Rational(0), Rational(1), {"exceptional"}));
    if (n >= 3) {  // for n = 2 the line in E is E itself
        SubvarietyCandidate l;
        l.name = "lineE";
        l.dim = 1;
        l.restricted = SymTensor(1, 2);
        l.restricted.set({0, 1}, Rational(-1));  // E restricts to the line with degree -1
        l.tags = {"line-in-E"};
        m.candidates.push_back(l);
    }

    // nef = cone(H, H - E): x + y >= 0 and -y >= 0; pseff = cone(E, H - E)
    ConeDescription nef;
    nef.kind = ConeKind::Nef;
    nef.inequalities = {LinearInequality{{Rational(1), Rational(1)}, false},
                        LinearInequality{{Rational(0), Rational(-1)}, false}};
    m.cones.push_back(nef);
    ConeDescription kahler = nef;
    kahler.kind = ConeKind::Kahler;
    for (auto& q : kahler.inequalities) q.strict = true;
    m.cones.push_back(kahler);
    ConeDescription pseff;
    pseff.kind = ConeKind::Pseff;
    pseff.inequalities = {LinearInequality{{Rational(1), Rational(0)}, false},
                          LinearInequality{{Rational(1), Rational(1)}, false}};
    m.cones.push_back(pseff);
    ConeDescription big = pseff;
    big.kind = ConeKind::Big;
    for (auto& q : big.inequalities) q.strict = true;
    m.cones.push_back(big);
    {
        ConeDescription mn = big;
        mn.kind = ConeKind::Modified;
        mn.p = n;
        m.cones.push_back(mn);
        ConeDescription m1 = kahler;
        m1.kind = ConeKind::Modified;
        m1.p = 1;
        m.cones.push_back(m1);
    }
    return m;
}

/// Rejects candidates a stability analysis cannot use: empty tensors and
/// dimension outside 1..n-1.
inline void validate_candidates(const ManifoldPresentation& m) {
    for (const auto& v : m.candidates) {
        if (v.dim < 1 || v.dim >= m.dim)
            throw degenerate_error("candidate " + v.name + " has dimension outside 1..n-1");
        if (v.restricted.arity() != v.dim)
            throw arity_error("candidate " + v.name + " tensor arity does not match its dimension");
        if (v.restricted.is_zero())
            throw degenerate_error("candidate " + v.name + " has an identically zero tensor");
    }
}

}  // namespace stablab

#endif
