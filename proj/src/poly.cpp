#include "infcycle/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "infcycle/errors.hpp"
#include "infcycle/parse.hpp"

namespace infcycle {

// ---------------------------------------------------------------- monomials

unsigned degree(const Exponents& e)
{
    return std::accumulate(e.begin(), e.end(), 0u);
}

bool divides(const Exponents& a, const Exponents& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

Exponents lcm(const Exponents& a, const Exponents& b)
{
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = std::max(a[i], b[i]);
    return r;
}

namespace {

bool degrevlex_greater(const Exponents& a, const Exponents& b, std::size_t from)
{
    unsigned da = 0, db = 0;
    for (std::size_t i = from; i < a.size(); ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db)
        return da > db;
    for (std::size_t i = a.size(); i-- > from;)
        if (a[i] != b[i])
            return a[i] < b[i];
    return false;
}

}  // namespace

bool MonomialOrder::greater(const Exponents& a, const Exponents& b) const
{
    switch (kind) {
    case OrderKind::Lex:
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i])
                return a[i] > b[i];
        return false;
    case OrderKind::Elimination: {
        unsigned da = 0, db = 0;
        for (std::size_t i = 0; i < block; ++i) {
            da += a[i];
            db += b[i];
        }
        if (da != db)
            return da > db;
        for (std::size_t i = 0; i < block; ++i)
            if (a[i] != b[i])
                return a[i] > b[i];
        return degrevlex_greater(a, b, block);
    }
    case OrderKind::DegRevLex:
    default:
        return degrevlex_greater(a, b, 0);
    }
}

std::string MonomialOrder::name() const
{
    switch (kind) {
    case OrderKind::Lex:
        return "lex";
    case OrderKind::Elimination:
        return "elim" + std::to_string(block);
    default:
        return "degrevlex";
    }
}

MonomialOrder parse_order(const std::string& name)
{
    if (name == "degrevlex" || name == "grevlex")
        return {OrderKind::DegRevLex, 0};
    if (name == "lex")
        return {OrderKind::Lex, 0};
    throw InputError("unknown monomial order '" + name + "' (expected degrevlex or lex)");
}

std::string monomial_string(const Exponents& e, const std::vector<std::string>& names)
{
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += names.at(i);
        if (e[i] > 1)
            s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c)
{
    Polynomial p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i)
{
    Exponents e(nvars, 0);
    e.at(i) = 1;
    return monomial(std::move(e));
}

Polynomial Polynomial::monomial(Exponents e, const Rational& c)
{
    Polynomial p(e.size());
    p.add_term(e, c);
    return p;
}

bool Polynomial::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && degree(terms_.begin()->first) == 0);
}

Rational Polynomial::constant_term() const
{
    return coefficient(Exponents(nvars_, 0));
}

Rational Polynomial::coefficient(const Exponents& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponents& e, const Rational& c)
{
    if (e.size() != nvars_)
        throw MathError("Polynomial: exponent vector has wrong length");
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    if (o.nvars_ != nvars_)
        throw MathError("Polynomial: adding polynomials from different rings");
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    if (o.nvars_ != nvars_)
        throw MathError("Polynomial: subtracting polynomials from different rings");
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

Polynomial Polynomial::operator-() const
{
    return scaled(-1);
}

Polynomial Polynomial::scaled(const Rational& c) const
{
    Polynomial p(nvars_);
    if (c == 0)
        return p;
    for (const auto& [e, v] : terms_)
        p.terms_.emplace(e, v * c);
    return p;
}

Polynomial Polynomial::times_monomial(const Exponents& m, const Rational& c) const
{
    Polynomial p(nvars_);
    if (c == 0)
        return p;
    for (const auto& [e, v] : terms_) {
        Exponents f = e;
        for (std::size_t i = 0; i < nvars_; ++i)
            f[i] += m[i];
        p.terms_.emplace(std::move(f), v * c);
    }
    return p;
}

Polynomial Polynomial::pow(unsigned k) const
{
    Polynomial r = constant(nvars_, 1);
    Polynomial b = *this;
    while (k) {
        if (k & 1u)
            r = r * b;
        k >>= 1u;
        if (k)
            b = b * b;
    }
    return r;
}

Polynomial Polynomial::derivative(std::size_t var) const
{
    Polynomial p(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e.at(var) == 0)
            continue;
        Exponents f = e;
        f[var] -= 1;
        p.add_term(f, c * e[var]);
    }
    return p;
}

int Polynomial::total_degree() const
{
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, static_cast<int>(degree(e)));
    return d;
}

int Polynomial::weighted_degree(const std::vector<int>& w) const
{
    int d = -1;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (std::size_t i = 0; i < nvars_; ++i)
            s += w.at(i) * static_cast<int>(e[i]);
        if (first || s > d)
            d = s;
        first = false;
    }
    return d;
}

bool Polynomial::is_homogeneous(const std::vector<int>& w) const
{
    std::optional<int> deg;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (std::size_t i = 0; i < nvars_; ++i)
            s += w.at(i) * static_cast<int>(e[i]);
        if (deg && *deg != s)
            return false;
        deg = s;
    }
    return true;
}

std::pair<Exponents, Rational> Polynomial::leading_term(const MonomialOrder& order) const
{
    if (terms_.empty())
        throw MathError("leading term of the zero polynomial");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        if (order.greater(it->first, best->first))
            best = it;
    return *best;
}

Polynomial Polynomial::embed(std::size_t new_nvars, std::size_t offset) const
{
    if (offset + nvars_ > new_nvars)
        throw MathError("Polynomial::embed: target ring too small");
    Polynomial p(new_nvars);
    for (const auto& [e, c] : terms_) {
        Exponents f(new_nvars, 0);
        std::copy(e.begin(), e.end(), f.begin() + static_cast<std::ptrdiff_t>(offset));
        p.terms_.emplace(std::move(f), c);
    }
    return p;
}

Polynomial Polynomial::restrict(std::size_t offset, std::size_t count) const
{
    Polynomial p(nvars_ - count);
    for (const auto& [e, c] : terms_) {
        Exponents f;
        f.reserve(nvars_ - count);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (i >= offset && i < offset + count) {
                if (e[i] != 0)
                    throw MathError("Polynomial::restrict: dropped variable occurs");
                continue;
            }
            f.push_back(e[i]);
        }
        p.terms_.emplace(std::move(f), c);
    }
    return p;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const
{
    if (images.size() != nvars_)
        throw MathError("Polynomial::substitute: wrong number of images");
    std::size_t target = images.empty() ? 0 : images.front().nvars();
    Polynomial r(target);
    std::vector<std::vector<Polynomial>> powers(nvars_);
    for (const auto& [e, c] : terms_) {
        Polynomial t = Polynomial::constant(target, c);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0)
                continue;
            auto& pw = powers[i];
            if (pw.empty())
                pw.push_back(Polynomial::constant(target, 1));
            while (pw.size() <= e[i])
                pw.push_back(pw.back() * images[i]);
            t = t * pw[e[i]];
        }
        r += t;
    }
    return r;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const
{
    if (terms_.empty())
        return "0";
    std::vector<std::pair<Exponents, Rational>> sorted(terms_.begin(), terms_.end());
    MonomialOrder order;
    std::sort(sorted.begin(), sorted.end(),
              [&](const auto& a, const auto& b) { return order.greater(a.first, b.first); });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : sorted) {
        Rational a = abs(c);
        bool neg = c < 0;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool unit_monomial = degree(e) == 0;
        if (unit_monomial)
            os << a.get_str();
        else if (a == 1)
            os << monomial_string(e, names);
        else
            os << a.get_str() << "*" << monomial_string(e, names);
    }
    return os.str();
}

Polynomial operator+(Polynomial a, const Polynomial& b)
{
    a += b;
    return a;
}

Polynomial operator-(Polynomial a, const Polynomial& b)
{
    a -= b;
    return a;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.nvars() != b.nvars())
        throw MathError("Polynomial: multiplying polynomials from different rings");
    Polynomial p(a.nvars());
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            Exponents e = ea;
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] += eb[i];
            p.add_term(e, ca * cb);
        }
    }
    return p;
}

Polynomial operator*(const Rational& c, const Polynomial& p)
{
    return p.scaled(c);
}

// ---------------------------------------------------------------- division

Division divide(const Polynomial& p, const std::vector<Polynomial>& divisors, const MonomialOrder& order)
{
    const std::size_t nv = p.nvars();
    Division d;
    d.remainder = Polynomial(nv);
    d.quotients.assign(divisors.size(), Polynomial(nv));
    std::vector<std::pair<Exponents, Rational>> lead;
    for (const auto& g : divisors)
        lead.push_back(g.is_zero() ? std::make_pair(Exponents(nv, 0), Rational(0)) : g.leading_term(order));
    Polynomial rest = p;
    while (!rest.is_zero()) {
        auto [lm, lc] = rest.leading_term(order);
        bool reduced = false;
        for (std::size_t k = 0; k < divisors.size(); ++k) {
            if (lead[k].second == 0 || !divides(lead[k].first, lm))
                continue;
            Exponents q(nv);
            for (std::size_t i = 0; i < nv; ++i)
                q[i] = lm[i] - lead[k].first[i];
            Rational c = lc / lead[k].second;
            rest -= divisors[k].times_monomial(q, c);
            d.quotients[k].add_term(q, c);
            reduced = true;
            break;
        }
        if (!reduced) {
            d.remainder.add_term(lm, lc);
            rest.add_term(lm, -lc);
        }
    }
    return d;
}

std::optional<Polynomial> exact_quotient(const Polynomial& p, const Polynomial& q)
{
    if (q.is_zero())
        throw MathError("exact_quotient: division by zero");
    Division d = divide(p, {q}, MonomialOrder{});
    if (!d.remainder.is_zero())
        return std::nullopt;
    return d.quotients.front();
}

// ---------------------------------------------------------------- Groebner

namespace {

struct GbElem {
    Polynomial p;
    Exponents lm;
    Rational lc;
    std::vector<Polynomial> rep;
};

class Buchberger {
public:
    Buchberger(std::size_t nvars, std::size_t ngens, const MonomialOrder& order, bool track)
        : nv_(nvars), ngens_(ngens), order_(order), track_(track)
    {
    }

    /// Fully reduces p (and its representation) modulo the current elements, skipping `skip`.
    void reduce(Polynomial& p, std::vector<Polynomial>& rep, std::optional<std::size_t> skip = {}) const
    {
        Polynomial rem(nv_);
        while (!p.is_zero()) {
            auto [lm, lc] = p.leading_term(order_);
            const GbElem* hit = nullptr;
            for (std::size_t k = 0; k < elems_.size(); ++k) {
                if (skip && *skip == k)
                    continue;
                if (divides(elems_[k].lm, lm)) {
                    hit = &elems_[k];
                    break;
                }
            }
            if (!hit) {
                rem.add_term(lm, lc);
                p.add_term(lm, -lc);
                continue;
            }
            Exponents q(nv_);
            for (std::size_t i = 0; i < nv_; ++i)
                q[i] = lm[i] - hit->lm[i];
            Rational c = lc / hit->lc;
            p -= hit->p.times_monomial(q, c);
            if (track_)
                for (std::size_t j = 0; j < ngens_; ++j)
                    rep[j] -= hit->rep[j].times_monomial(q, c);
        }
        p = std::move(rem);
    }

    void add(Polynomial p, std::vector<Polynomial> rep)
    {
        reduce(p, rep);
        if (p.is_zero())
            return;
        auto [lm, lc] = p.leading_term(order_);
        std::size_t idx = elems_.size();
        for (std::size_t k = 0; k < idx; ++k)
            pending_.emplace_back(k, idx);
        elems_.push_back(GbElem{std::move(p), std::move(lm), std::move(lc), std::move(rep)});
    }

    bool is_pending(std::size_t i, std::size_t j) const
    {
        if (i > j)
            std::swap(i, j);
        return std::find(pending_.begin(), pending_.end(), std::make_pair(i, j)) != pending_.end();
    }

    void run()
    {
        while (!pending_.empty()) {
            // normal strategy: smallest lcm first
            std::size_t best = 0;
            Exponents best_lcm = lcm(elems_[pending_[0].first].lm, elems_[pending_[0].second].lm);
            for (std::size_t k = 1; k < pending_.size(); ++k) {
                Exponents l = lcm(elems_[pending_[k].first].lm, elems_[pending_[k].second].lm);
                if (order_.greater(best_lcm, l)) {
                    best = k;
                    best_lcm = std::move(l);
                }
            }
            auto [i, j] = pending_[best];
            pending_.erase(pending_.begin() + static_cast<std::ptrdiff_t>(best));

            const GbElem& a = elems_[i];
            const GbElem& b = elems_[j];
            if (degree(best_lcm) == degree(a.lm) + degree(b.lm))
                continue;  // coprime leading monomials
            bool chain = false;
            for (std::size_t k = 0; k < elems_.size() && !chain; ++k)
                if (k != i && k != j && divides(elems_[k].lm, best_lcm) && !is_pending(i, k) && !is_pending(j, k))
                    chain = true;
            if (chain)
                continue;

            Exponents qa(nv_), qb(nv_);
            for (std::size_t t = 0; t < nv_; ++t) {
                qa[t] = best_lcm[t] - a.lm[t];
                qb[t] = best_lcm[t] - b.lm[t];
            }
            Rational ca = 1 / a.lc, cb = 1 / b.lc;
            Polynomial s = a.p.times_monomial(qa, ca) - b.p.times_monomial(qb, cb);
            std::vector<Polynomial> rep;
            if (track_) {
                rep.assign(ngens_, Polynomial(nv_));
                for (std::size_t g = 0; g < ngens_; ++g)
                    rep[g] = a.rep[g].times_monomial(qa, ca) - b.rep[g].times_monomial(qb, cb);
            }
            add(std::move(s), std::move(rep));
            if (elems_.back().lm == Exponents(nv_, 0))
                break;  // unit ideal
        }
    }

    GroebnerBasis finish()
    {
        // a constant element means the unit ideal
        for (const auto& e : elems_) {
            if (degree(e.lm) == 0) {
                GroebnerBasis gb;
                gb.tracked = track_;
                gb.basis.push_back(Polynomial::constant(nv_, 1));
                if (track_) {
                    std::vector<Polynomial> rep;
                    for (const auto& r : e.rep)
                        rep.push_back(r.scaled(1 / e.lc));
                    gb.cofactors.push_back(std::move(rep));
                }
                return gb;
            }
        }
        // minimal basis
        std::vector<GbElem> minimal;
        for (std::size_t k = 0; k < elems_.size(); ++k) {
            bool redundant = false;
            for (std::size_t l = 0; l < elems_.size() && !redundant; ++l) {
                if (l == k || !divides(elems_[l].lm, elems_[k].lm))
                    continue;
                if (elems_[l].lm != elems_[k].lm || l < k)
                    redundant = true;
            }
            if (!redundant)
                minimal.push_back(elems_[k]);
        }
        elems_ = std::move(minimal);
        // tail reduction
        for (std::size_t k = 0; k < elems_.size(); ++k) {
            Polynomial p = elems_[k].p;
            std::vector<Polynomial> rep = elems_[k].rep;
            reduce(p, rep, k);
            Rational lc = p.leading_term(order_).second;
            elems_[k].p = p.scaled(1 / lc);
            elems_[k].lc = 1;
            if (track_)
                for (auto& r : rep)
                    r = r.scaled(1 / lc);
            elems_[k].rep = std::move(rep);
        }
        std::sort(elems_.begin(), elems_.end(),
                  [&](const GbElem& a, const GbElem& b) { return order_.greater(b.lm, a.lm); });
        GroebnerBasis gb;
        gb.tracked = track_;
        for (auto& e : elems_) {
            gb.basis.push_back(std::move(e.p));
            if (track_)
                gb.cofactors.push_back(std::move(e.rep));
        }
        return gb;
    }

private:
    std::size_t nv_;
    std::size_t ngens_;
    MonomialOrder order_;
    bool track_;
    std::vector<GbElem> elems_;
    std::vector<std::pair<std::size_t, std::size_t>> pending_;
};

}  // namespace

GroebnerBasis groebner_basis(const std::vector<Polynomial>& generators, const MonomialOrder& order, bool track)
{
    std::size_t nv = generators.empty() ? 0 : generators.front().nvars();
    for (const auto& g : generators)
        if (g.nvars() != nv)
            throw MathError("groebner_basis: generators from different rings");
    Buchberger bb(nv, generators.size(), order, track);
    for (std::size_t j = 0; j < generators.size(); ++j) {
        std::vector<Polynomial> rep;
        if (track) {
            rep.assign(generators.size(), Polynomial(nv));
            rep[j] = Polynomial::constant(nv, 1);
        }
        bb.add(generators[j], std::move(rep));
    }
    bb.run();
    return bb.finish();
}

// ---------------------------------------------------------------- PolyContext

PolyContext::PolyContext(std::vector<std::string> variables, MonomialOrder order, std::vector<Polynomial> relations,
                         std::vector<int> weights)
    : variables_(std::move(variables)), order_(order), relations_(std::move(relations)), weights_(std::move(weights))
{
    for (std::size_t i = 0; i < variables_.size(); ++i)
        for (std::size_t j = i + 1; j < variables_.size(); ++j)
            if (variables_[i] == variables_[j])
                throw InputError("duplicate variable name '" + variables_[i] + "'");
    if (weights_.empty())
        weights_.assign(variables_.size(), 1);
    if (weights_.size() != variables_.size())
        throw InputError("weights list length differs from the number of variables");
    for (const auto& r : relations_)
        check_member(r);
    std::vector<Polynomial> nonzero;
    for (const auto& r : relations_)
        if (!r.is_zero())
            nonzero.push_back(r);
    relations_ = nonzero;
    if (relations_.empty()) {
        gb_.tracked = true;
    }
    else {
        gb_ = groebner_basis(relations_, order_, true);
    }
}

std::optional<std::size_t> PolyContext::var_index(const std::string& name) const
{
    for (std::size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i] == name)
            return i;
    return std::nullopt;
}

void PolyContext::check_member(const Polynomial& p) const
{
    if (p.nvars() != nvars())
        throw InputError("polynomial does not belong to the ring with variables (" +
                         [&] {
                             std::string s;
                             for (const auto& v : variables_)
                                 s += (s.empty() ? "" : ",") + v;
                             return s;
                         }() +
                         ")");
}

Polynomial PolyContext::normal_form(const Polynomial& p) const
{
    check_member(p);
    if (gb_.basis.empty())
        return p;
    return divide(p, gb_.basis, order_).remainder;
}

bool PolyContext::relations_homogeneous() const
{
    return std::all_of(relations_.begin(), relations_.end(),
                       [&](const Polynomial& r) { return r.is_homogeneous(weights_); });
}

bool PolyContext::is_unit_ideal() const
{
    return gb_.basis.size() == 1 && gb_.basis.front().is_constant() && !gb_.basis.front().is_zero();
}

Polynomial PolyContext::parse(const std::string& text) const
{
    return parse_polynomial(text, variables_);
}

PolyContext PolyContext::with_relations(std::vector<Polynomial> relations) const
{
    return PolyContext(variables_, order_, std::move(relations), weights_);
}

Membership ideal_member(const Polynomial& p, const PolyContext& ctx)
{
    ctx.check_member(p);
    Membership m;
    const auto& gb = ctx.groebner();
    const std::size_t nv = ctx.nvars();
    m.cofactors.assign(ctx.relations().size(), Polynomial(nv));
    if (gb.basis.empty()) {
        m.normal_form = p;
        m.member = p.is_zero();
        return m;
    }
    Division d = divide(p, gb.basis, ctx.order());
    m.normal_form = d.remainder;
    m.member = d.remainder.is_zero();
    if (m.member) {
        for (std::size_t k = 0; k < gb.basis.size(); ++k) {
            if (d.quotients[k].is_zero())
                continue;
            for (std::size_t j = 0; j < m.cofactors.size(); ++j)
                m.cofactors[j] += d.quotients[k] * gb.cofactors[k][j];
        }
    }
    else {
        m.cofactors.clear();
    }
    return m;
}

// ---------------------------------------------------------------- ideal operations

namespace {

// Eliminates an auxiliary variable placed at index 0.
std::vector<Polynomial> eliminate_first(const std::vector<Polynomial>& gens, std::size_t nv)
{
    MonomialOrder elim{OrderKind::Elimination, 1};
    GroebnerBasis gb = groebner_basis(gens, elim, false);
    std::vector<Polynomial> out;
    for (const auto& g : gb.basis) {
        bool has_t = std::any_of(g.terms().begin(), g.terms().end(), [](const auto& t) { return t.first[0] != 0; });
        if (!has_t)
            out.push_back(g.restrict(0, 1));
    }
    (void)nv;
    return out;
}

}  // namespace

std::vector<Polynomial> intersection(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b,
                                     const MonomialOrder& order)
{
    (void)order;
    if (a.empty() || b.empty())
        return {};
    std::size_t nv = a.front().nvars();
    Polynomial t = Polynomial::variable(nv + 1, 0);
    Polynomial one_minus_t = Polynomial::constant(nv + 1, 1) - t;
    std::vector<Polynomial> gens;
    for (const auto& g : a)
        gens.push_back(t * g.embed(nv + 1, 1));
    for (const auto& g : b)
        gens.push_back(one_minus_t * g.embed(nv + 1, 1));
    return eliminate_first(gens, nv);
}

std::vector<Polynomial> ideal_quotient(const std::vector<Polynomial>& gens, const Polynomial& f,
                                       const MonomialOrder& order)
{
    std::size_t nv = f.nvars();
    if (f.is_zero())
        return {Polynomial::constant(nv, 1)};
    std::vector<Polynomial> meet = intersection(gens, {f}, order);
    std::vector<Polynomial> out;
    for (const auto& g : meet) {
        auto q = exact_quotient(g, f);
        if (!q)
            throw MathError("ideal_quotient: intersection element not divisible by f");
        out.push_back(*q);
    }
    return out;
}

std::vector<Polynomial> saturation(const std::vector<Polynomial>& gens, const Polynomial& g, const MonomialOrder& order)
{
    (void)order;
    std::size_t nv = g.nvars();
    if (gens.empty())
        return {};
    std::vector<Polynomial> big;
    for (const auto& p : gens)
        big.push_back(p.embed(nv + 1, 1));
    Polynomial t = Polynomial::variable(nv + 1, 0);
    big.push_back(Polynomial::constant(nv + 1, 1) - t * g.embed(nv + 1, 1));
    return eliminate_first(big, nv);
}

bool ideal_contains(const std::vector<Polynomial>& outer, const std::vector<Polynomial>& inner,
                    const MonomialOrder& order)
{
    if (inner.empty())
        return true;
    if (outer.empty())
        return std::all_of(inner.begin(), inner.end(), [](const Polynomial& p) { return p.is_zero(); });
    GroebnerBasis gb = groebner_basis(outer, order, false);
    return std::all_of(inner.begin(), inner.end(),
                       [&](const Polynomial& p) { return divide(p, gb.basis, order).remainder.is_zero(); });
}

RegularityReport regularity_report(const PolyContext& ctx, const std::vector<Polynomial>& seq,
                                   const std::optional<Polynomial>& inverted)
{
    if (seq.empty())
        throw InputError("regular sequence check needs a nonempty sequence");
    for (const auto& f : seq)
        ctx.check_member(f);
    if (inverted)
        ctx.check_member(*inverted);

    RegularityReport rep;
    rep.method = inverted ? "exact: ideal quotients after inverting " + ctx.format(*inverted)
                          : "exact: ideal quotients";
    const MonomialOrder& order = ctx.order();
    std::vector<Polynomial> current = ctx.relations();
    if (inverted && !current.empty())
        current = saturation(current, *inverted, order);

    for (std::size_t i = 0; i < seq.size(); ++i) {
        const Polynomial& f = seq[i];
        bool f_zero = current.empty() ? f.is_zero() : ideal_contains(current, {f}, order);
        if (f_zero) {
            rep.failing_index = i;
            rep.reason = "element " + std::to_string(i + 1) + " vanishes modulo the preceding ideal";
            return rep;
        }
        if (!current.empty()) {
            std::vector<Polynomial> colon = ideal_quotient(current, f, order);
            if (inverted)
                colon = saturation(colon, *inverted, order);
            if (!ideal_contains(current, colon, order)) {
                rep.failing_index = i;
                rep.reason = "element " + std::to_string(i + 1) + " is a zero divisor modulo the preceding ideal";
                return rep;
            }
        }
        current.push_back(f);
        if (inverted)
            current = saturation(current, *inverted, order);
    }
    GroebnerBasis gb = groebner_basis(current, order, false);
    if (gb.basis.size() == 1 && gb.basis.front().is_constant()) {
        rep.reason = "the sequence generates the unit ideal";
        return rep;
    }
    rep.regular = true;
    return rep;
}

bool is_regular_sequence(const PolyContext& ctx, const std::vector<Polynomial>& seq)
{
    return regularity_report(ctx, seq).regular;
}

}  // namespace infcycle

namespace infcycle {

namespace {

using HilbertPoly = std::map<int, mpz_class>;

void hp_add(HilbertPoly& a, const HilbertPoly& b, int shift, int sign)
{
    for (const auto& [d, c] : b) {
        mpz_class& x = a[d + shift];
        x += sign * c;
        if (x == 0)
            a.erase(d + shift);
    }
}

std::vector<Exponents> minimalize(std::vector<Exponents> gens)
{
    std::sort(gens.begin(), gens.end(), [](const Exponents& a, const Exponents& b) {
        return degree(a) != degree(b) ? degree(a) < degree(b) : a < b;
    });
    std::vector<Exponents> out;
    for (const auto& g : gens)
        if (std::none_of(out.begin(), out.end(), [&](const Exponents& h) { return divides(h, g); }))
            out.push_back(g);
    return out;
}

HilbertPoly numerator_rec(std::vector<Exponents> gens, const std::vector<int>& w)
{
    gens = minimalize(std::move(gens));
    if (gens.empty())
        return {{0, 1}};
    Exponents m = gens.back();
    gens.pop_back();
    int wm = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        wm += w[i] * static_cast<int>(m[i]);
    std::vector<Exponents> colon;
    for (const auto& g : gens) {
        Exponents q(g.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            q[i] = g[i] > m[i] ? g[i] - m[i] : 0;
        colon.push_back(std::move(q));
    }
    HilbertPoly result = numerator_rec(gens, w);
    hp_add(result, numerator_rec(std::move(colon), w), wm, -1);
    return result;
}

}  // namespace

std::map<int, mpz_class> hilbert_numerator(const std::vector<Exponents>& generators, const std::vector<int>& weights)
{
    return numerator_rec(generators, weights);
}

std::optional<bool> regular_by_hilbert_series(const PolyContext& ctx, const std::vector<Polynomial>& seq)
{
    const auto& w = ctx.weights();
    if (std::any_of(w.begin(), w.end(), [](int x) { return x <= 0; }) || !ctx.relations_homogeneous())
        return std::nullopt;
    for (const auto& f : seq)
        if (f.is_zero() || !f.is_homogeneous(w))
            return std::nullopt;
    auto leads_of = [&](const std::vector<Polynomial>& gens) {
        std::vector<Exponents> leads;
        if (gens.empty())
            return leads;
        for (const auto& g : groebner_basis(gens, ctx.order(), false).basis)
            leads.push_back(g.leading_monomial(ctx.order()));
        return leads;
    };
    HilbertPoly base = hilbert_numerator(leads_of(ctx.relations()), w);
    std::vector<Polynomial> all = ctx.relations();
    all.insert(all.end(), seq.begin(), seq.end());
    HilbertPoly quotient = hilbert_numerator(leads_of(all), w);
    HilbertPoly expected = base;
    for (const auto& f : seq) {
        int d = f.weighted_degree(w);
        if (d == 0)
            return false;
        HilbertPoly next = expected;
        hp_add(next, expected, d, -1);
        expected = std::move(next);
    }
    return quotient == expected;
}

}  // namespace infcycle
