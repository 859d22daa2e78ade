#include "dbx/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace dbx {

SparsePoly::SparsePoly(int nvars) : nvars_(nvars) {
    if (nvars < 0) throw std::invalid_argument("SparsePoly: negative nvars");
}

SparsePoly SparsePoly::constant(int nvars, const Rat& c) {
    SparsePoly p(nvars);
    p.add_term(ExpVec(nvars, 0), c);
    return p;
}

SparsePoly SparsePoly::variable(int nvars, int var) {
    if (var < 0 || var >= nvars)
        throw std::invalid_argument("SparsePoly::variable: index out of range");
    ExpVec e(nvars, 0);
    e[var] = 1;
    SparsePoly p(nvars);
    p.add_term(e, Rat(1));
    return p;
}

SparsePoly SparsePoly::monomial(int nvars, const ExpVec& exp, const Rat& c) {
    if (static_cast<int>(exp.size()) != nvars)
        throw std::invalid_argument("SparsePoly::monomial: exponent size");
    for (int k : exp)
        if (k < 0) throw std::invalid_argument("SparsePoly::monomial: negative exponent");
    SparsePoly p(nvars);
    p.add_term(exp, c);
    return p;
}

int SparsePoly::total_degree() const {
    if (terms_.empty()) return -1;
    // Canonical order is graded, so the last term has maximal degree.
    return exp_degree(terms_.rbegin()->first);
}

bool SparsePoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = exp_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
        if (exp_degree(e) != d) return false;
    return true;
}

bool SparsePoly::is_multilinear() const {
    for (const auto& [e, c] : terms_)
        for (int k : e)
            if (k >= 2) return false;
    return true;
}

int SparsePoly::degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

Rat SparsePoly::coefficient_of(const ExpVec& exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? Rat(0) : it->second;
}

SparsePoly SparsePoly::coefficient_of_power(int var, int k) const {
    SparsePoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] != k) continue;
        ExpVec f = e;
        f[var] = 0;
        out.add_term(f, c);
    }
    return out;
}

SparsePoly& SparsePoly::add_term(const ExpVec& exp, const Rat& c) {
    if (static_cast<int>(exp.size()) != nvars_)
        throw std::invalid_argument("SparsePoly::add_term: exponent size");
    if (c == 0) return *this;
    auto [it, inserted] = terms_.emplace(exp, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
    return *this;
}

SparsePoly SparsePoly::operator-() const {
    SparsePoly out(nvars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
    if (nvars_ != o.nvars_)
        throw std::invalid_argument("SparsePoly: variable space mismatch");
    SparsePoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const {
    if (nvars_ != o.nvars_)
        throw std::invalid_argument("SparsePoly: variable space mismatch");
    SparsePoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
}

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
    if (nvars_ != o.nvars_)
        throw std::invalid_argument("SparsePoly: variable space mismatch");
    SparsePoly out(nvars_);
    ExpVec e(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (int k = 0; k < nvars_; ++k) e[k] = ea[k] + eb[k];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

SparsePoly SparsePoly::operator*(const Rat& c) const {
    SparsePoly out(nvars_);
    if (c == 0) return out;
    for (const auto& [e, coeff] : terms_) out.terms_.emplace(e, coeff * c);
    return out;
}

bool SparsePoly::operator==(const SparsePoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
}

SparsePoly SparsePoly::derivative(int var) const {
    if (var < 0 || var >= nvars_)
        throw std::invalid_argument("SparsePoly::derivative: index out of range");
    SparsePoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        ExpVec f = e;
        f[var] -= 1;
        out.add_term(f, c * e[var]);
    }
    return out;
}

SparsePoly SparsePoly::substitute(const std::vector<SparsePoly>& forms) const {
    if (static_cast<int>(forms.size()) != nvars_)
        throw std::invalid_argument("SparsePoly::substitute: needs one form per variable");
    int out_nvars = forms.empty() ? 0 : forms[0].nvars();
    for (const auto& f : forms)
        if (f.nvars() != out_nvars)
            throw std::invalid_argument("SparsePoly::substitute: forms disagree on nvars");
    if (forms.empty()) {
        // Constant polynomial in zero variables stays as such.
        return *this;
    }
    // Memoize powers of each form as needed.
    std::vector<std::vector<SparsePoly>> powers(nvars_);
    auto power = [&](int var, int k) -> const SparsePoly& {
        auto& cache = powers[var];
        if (cache.empty()) cache.push_back(SparsePoly::constant(out_nvars, Rat(1)));
        while (static_cast<int>(cache.size()) <= k)
            cache.push_back(cache.back() * forms[var]);
        return cache[k];
    };
    SparsePoly out(out_nvars);
    for (const auto& [e, c] : terms_) {
        SparsePoly term = SparsePoly::constant(out_nvars, c);
        for (int v = 0; v < nvars_; ++v)
            if (e[v] > 0) term = term * power(v, e[v]);
        out = out + term;
    }
    return out;
}

SparsePoly SparsePoly::set_vars_to_zero(const std::vector<int>& vars) const {
    std::vector<bool> kill(nvars_, false);
    for (int v : vars) {
        if (v < 0 || v >= nvars_)
            throw std::invalid_argument("SparsePoly::set_vars_to_zero: index out of range");
        kill[v] = true;
    }
    SparsePoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        bool keep = true;
        for (int v = 0; v < nvars_; ++v)
            if (kill[v] && e[v] > 0) { keep = false; break; }
        if (keep) out.terms_.emplace(e, c);
    }
    return out;
}

SparsePoly SparsePoly::divide_by_variable(int var) const {
    SparsePoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0)
            throw std::domain_error("SparsePoly::divide_by_variable: term not divisible");
        ExpVec f = e;
        f[var] -= 1;
        out.terms_.emplace(f, c);
    }
    return out;
}

SparsePoly SparsePoly::padded(int nvars) const {
    if (nvars < nvars_)
        throw std::invalid_argument("SparsePoly::padded: cannot shrink variable space");
    SparsePoly out(nvars);
    for (const auto& [e, c] : terms_) {
        ExpVec f = e;
        f.resize(nvars, 0);
        out.terms_.emplace(std::move(f), c);
    }
    return out;
}

Rat SparsePoly::eval_rat(const std::vector<Rat>& x) const {
    if (static_cast<int>(x.size()) != nvars_)
        throw std::invalid_argument("SparsePoly::eval_rat: point size");
    Rat acc(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (int v = 0; v < nvars_; ++v)
            for (int k = 0; k < e[v]; ++k) t *= x[v];
        acc += t;
    }
    return acc;
}

std::complex<double> SparsePoly::eval_complex(
    const std::vector<std::complex<double>>& x) const {
    if (static_cast<int>(x.size()) != nvars_)
        throw std::invalid_argument("SparsePoly::eval_complex: point size");
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [e, c] : terms_) {
        std::complex<double> t(to_double(c), 0.0);
        for (int v = 0; v < nvars_; ++v)
            for (int k = 0; k < e[v]; ++k) t *= x[v];
        acc += t;
    }
    return acc;
}

std::string SparsePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            if (a < 0) { os << " - "; a = -a; }
            else os << " + ";
        }
        first = false;
        std::string mono;
        for (int v = 0; v < nvars_; ++v) {
            if (e[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(v + 1);
            if (e[v] > 1) mono += "^" + std::to_string(e[v]);
        }
        if (mono.empty()) {
            os << rat_string(a);
        } else {
            if (a != 1) os << rat_string(a) << "*";
            os << mono;
        }
    }
    return os.str();
}

SparsePoly poly_determinant(const std::vector<std::vector<SparsePoly>>& m) {
    size_t n = m.size();
    if (n == 0) throw std::invalid_argument("poly_determinant: empty matrix");
    int nvars = m[0][0].nvars();
    for (const auto& row : m)
        if (row.size() != n)
            throw std::invalid_argument("poly_determinant: not square");
    if (n == 1) return m[0][0];
    SparsePoly det(nvars);
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<SparsePoly>> minor;
        minor.reserve(n - 1);
        for (size_t i = 1; i < n; ++i) {
            std::vector<SparsePoly> row;
            row.reserve(n - 1);
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        SparsePoly contrib = m[0][j] * poly_determinant(minor);
        det = (j % 2 == 0) ? det + contrib : det - contrib;
    }
    return det;
}

SparsePoly sylvester_resultant(const SparsePoly& p, const SparsePoly& q,
                               int var) {
    int dp = p.degree_in(var), dq = q.degree_in(var);
    if (p.is_zero() || q.is_zero())
        throw std::invalid_argument("sylvester_resultant: zero polynomial");
    int nvars = p.nvars();
    if (q.nvars() != nvars)
        throw std::invalid_argument("sylvester_resultant: variable space mismatch");
    if (dp == 0 && dq == 0)
        return SparsePoly::constant(nvars, Rat(1));
    // Coefficients of p and q as polynomials in `var`, highest power first.
    auto coeffs = [&](const SparsePoly& f, int d) {
        std::vector<SparsePoly> c;
        for (int k = d; k >= 0; --k) c.push_back(f.coefficient_of_power(var, k));
        return c;
    };
    std::vector<SparsePoly> cp = coeffs(p, dp), cq = coeffs(q, dq);
    int n = dp + dq;
    SparsePoly zero(nvars);
    std::vector<std::vector<SparsePoly>> s(n, std::vector<SparsePoly>(n, zero));
    for (int i = 0; i < dq; ++i)
        for (int k = 0; k <= dp; ++k) s[i][i + k] = cp[k];
    for (int i = 0; i < dp; ++i)
        for (int k = 0; k <= dq; ++k) s[dq + i][i + k] = cq[k];
    return poly_determinant(s);
}

}  // namespace dbx
