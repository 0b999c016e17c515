#include "lfa/function.hpp"

#include <cmath>

namespace lfa {

SampledFunction SampledFunction::zeros(std::shared_ptr<const FieldParams> params, int win_lo,
                                       int level, Domain dom, bool exact) {
    SampledFunction f;
    f.params_ = std::move(params);
    f.win_lo_ = win_lo;
    f.level_ = level;
    f.domain_ = dom;
    f.exact_ = exact;
    std::size_t n = cell_count(*f.params_, win_lo, level);
    if (exact)
        f.rvals_.assign(n, Rational(0));
    else
        f.cvals_.assign(n, Cplx(0.0, 0.0));
    return f;
}

SampledFunction SampledFunction::constant(std::shared_ptr<const FieldParams> params, int level,
                                          const Rational& value, Domain dom) {
    SampledFunction f = zeros(std::move(params), 0, level, dom, true);
    for (auto& v : f.rvals_) v = value;
    return f;
}

SampledFunction SampledFunction::from_rational(std::shared_ptr<const FieldParams> params,
                                               int win_lo, int level, Domain dom,
                                               std::vector<Rational> cells) {
    SampledFunction f;
    f.params_ = std::move(params);
    f.win_lo_ = win_lo;
    f.level_ = level;
    f.domain_ = dom;
    f.exact_ = true;
    if (cells.size() != cell_count(*f.params_, win_lo, level))
        throw parameter_error("SampledFunction: cell count does not match window");
    f.rvals_ = std::move(cells);
    return f;
}

SampledFunction SampledFunction::from_complex(std::shared_ptr<const FieldParams> params,
                                              int win_lo, int level, Domain dom,
                                              std::vector<Cplx> cells) {
    SampledFunction f;
    f.params_ = std::move(params);
    f.win_lo_ = win_lo;
    f.level_ = level;
    f.domain_ = dom;
    f.exact_ = false;
    if (cells.size() != cell_count(*f.params_, win_lo, level))
        throw parameter_error("SampledFunction: cell count does not match window");
    f.cvals_ = std::move(cells);
    return f;
}

const Rational& SampledFunction::rval(std::size_t j) const {
    if (!exact_) throw parameter_error("SampledFunction: rational view of inexact data");
    return rvals_[j];
}

const std::vector<Rational>& SampledFunction::rvals() const {
    if (!exact_) throw parameter_error("SampledFunction: rational view of inexact data");
    return rvals_;
}

const std::vector<Cplx>& SampledFunction::cvals() const {
    if (exact_) throw parameter_error("SampledFunction: complex view of exact data");
    return cvals_;
}

SampledFunction SampledFunction::to_complex() const {
    if (!exact_) return *this;
    SampledFunction f = *this;
    f.exact_ = false;
    f.cvals_.resize(rvals_.size());
    for (std::size_t j = 0; j < rvals_.size(); ++j) f.cvals_[j] = Cplx(to_double(rvals_[j]), 0.0);
    f.rvals_.clear();
    return f;
}

SampledFunction SampledFunction::lift(int new_level) const {
    if (new_level < level_) throw parameter_error("lift: target level is coarser");
    SampledFunction f = zeros(params_, win_lo_, new_level, domain_, exact_);
    std::size_t old_n = size();
    std::size_t new_n = f.size();
    for (std::size_t j = 0; j < new_n; ++j) {
        std::size_t src = j % old_n;
        if (exact_)
            f.rvals_[j] = rvals_[src];
        else
            f.cvals_[j] = cvals_[src];
    }
    return f;
}

SampledFunction SampledFunction::coarsen(int new_level) const {
    if (new_level > level_) throw parameter_error("coarsen: target level is finer");
    if (new_level < win_lo_) throw parameter_error("coarsen: target level above window");
    SampledFunction f = zeros(params_, win_lo_, new_level, domain_, exact_);
    std::size_t new_n = f.size();
    std::size_t per = size() / new_n;
    for (std::size_t c = 0; c < new_n; ++c) {
        if (exact_) {
            Rational s(0);
            for (std::size_t i = 0; i < per; ++i) s += rvals_[c + i * new_n];
            f.rvals_[c] = s / Rational(static_cast<std::int64_t>(per));
        } else {
            Cplx s(0.0, 0.0);
            for (std::size_t i = 0; i < per; ++i) s += cvals_[c + i * new_n];
            f.cvals_[c] = s / double(per);
        }
    }
    return f;
}

Cplx SampledFunction::integral() const {
    Cplx s(0.0, 0.0);
    for (std::size_t j = 0; j < size(); ++j) s += cval(j);
    return s * to_double(rat_pow(params_->q(), -static_cast<std::int64_t>(level_)));
}

Rational SampledFunction::integral_exact() const {
    Rational s(0);
    for (const auto& v : rvals()) s += v;
    return s * rat_pow(params_->q(), -static_cast<std::int64_t>(level_));
}

SampledFunction SampledFunction::abs() const {
    SampledFunction f = *this;
    if (exact_) {
        for (auto& v : f.rvals_)
            if (v < 0) v = -v;
    } else {
        for (auto& v : f.cvals_) v = Cplx(std::abs(v), 0.0);
    }
    return f;
}

SampledFunction SampledFunction::conj() const {
    if (exact_) return *this;
    SampledFunction f = *this;
    for (auto& v : f.cvals_) v = std::conj(v);
    return f;
}

void SampledFunction::check_compatible(const SampledFunction& o) const {
    if (!params_->same_as(*o.params_))
        throw parameter_error("SampledFunction: mismatched field parameters");
    if (win_lo_ != o.win_lo_ || level_ != o.level_)
        throw parameter_error("SampledFunction: mismatched windows");
}

SampledFunction SampledFunction::operator+(const SampledFunction& o) const {
    check_compatible(o);
    if (exact_ && o.exact_) {
        SampledFunction f = *this;
        for (std::size_t j = 0; j < f.rvals_.size(); ++j) f.rvals_[j] += o.rvals_[j];
        return f;
    }
    SampledFunction f = to_complex();
    for (std::size_t j = 0; j < f.cvals_.size(); ++j) f.cvals_[j] += o.cval(j);
    return f;
}

SampledFunction SampledFunction::operator-(const SampledFunction& o) const {
    check_compatible(o);
    if (exact_ && o.exact_) {
        SampledFunction f = *this;
        for (std::size_t j = 0; j < f.rvals_.size(); ++j) f.rvals_[j] -= o.rvals_[j];
        return f;
    }
    SampledFunction f = to_complex();
    for (std::size_t j = 0; j < f.cvals_.size(); ++j) f.cvals_[j] -= o.cval(j);
    return f;
}

SampledFunction SampledFunction::operator*(const SampledFunction& o) const {
    check_compatible(o);
    if (exact_ && o.exact_) {
        SampledFunction f = *this;
        for (std::size_t j = 0; j < f.rvals_.size(); ++j) f.rvals_[j] *= o.rvals_[j];
        return f;
    }
    SampledFunction f = to_complex();
    for (std::size_t j = 0; j < f.cvals_.size(); ++j) f.cvals_[j] *= o.cval(j);
    return f;
}

SampledFunction SampledFunction::scaled(const Cplx& a) const {
    SampledFunction f = to_complex();
    for (auto& v : f.cvals_) v *= a;
    return f;
}

SampledFunction SampledFunction::scaled(const Rational& a) const {
    if (exact_) {
        SampledFunction f = *this;
        for (auto& v : f.rvals_) v *= a;
        return f;
    }
    return scaled(Cplx(to_double(a), 0.0));
}

SampledFunction SampledFunction::translate(std::uint64_t h_cell) const {
    std::size_t n = size();
    SampledFunction f = *this;
    for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t src = cell_sub(*params_, n, j, h_cell);
        if (exact_)
            f.rvals_[j] = rvals_[src];
        else
            f.cvals_[j] = cvals_[src];
    }
    return f;
}

double SampledFunction::max_abs_diff(const SampledFunction& o) const {
    check_compatible(o);
    double m = 0.0;
    for (std::size_t j = 0; j < size(); ++j) m = std::max(m, std::abs(cval(j) - o.cval(j)));
    return m;
}

bool operator==(const SampledFunction& a, const SampledFunction& b) {
    a.check_compatible(b);
    if (!a.exact_ || !b.exact_)
        throw parameter_error("SampledFunction: exact equality needs exact storage");
    return a.rvals_ == b.rvals_;
}

SampledFunction indicator(std::shared_ptr<const FieldParams> params, const CosetIndex& h,
                          int level) {
    if (h.level > level)
        throw resolution_error("indicator: coset level exceeds target resolution");
    if (h.level < 0 || h.index >= cell_count(*params, 0, h.level))
        throw parameter_error("indicator: bad coset index");
    SampledFunction f = SampledFunction::zeros(params, 0, level, Domain::on_D, true);
    std::uint64_t block = cell_count(*params, 0, h.level);
    std::vector<Rational> cells(cell_count(*params, 0, level), Rational(0));
    for (std::uint64_t j = 0; j < cells.size(); ++j)
        if (j % block == h.index) cells[j] = 1;
    return SampledFunction::from_rational(std::move(params), 0, level, Domain::on_D,
                                          std::move(cells));
}

SampledFunction character_function(const CharacterSystem& cs, std::uint64_t n) {
    std::uint64_t N = cs.size();
    if (n >= N) throw resolution_error("character_function: n exceeds q^k");
    if (cs.exact_signs()) {
        std::vector<Rational> cells(N);
        for (std::uint64_t j = 0; j < N; ++j) cells[j] = cs.sign(n, j);
        return SampledFunction::from_rational(cs.params_ptr(), 0, cs.resolution(), Domain::on_D,
                                              std::move(cells));
    }
    std::vector<Cplx> cells(N);
    for (std::uint64_t j = 0; j < N; ++j) cells[j] = cs.value(n, j);
    return SampledFunction::from_complex(cs.params_ptr(), 0, cs.resolution(), Domain::on_D,
                                         std::move(cells));
}

double lp_norm(const SampledFunction& f, double p, const SampledFunction* w) {
    if (p < 1.0) throw parameter_error("lp_norm: p must be >= 1");
    double s = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        double wj = 1.0;
        if (w) {
            if (w->size() != f.size())
                throw parameter_error("lp_norm: weight grid mismatch");
            wj = w->exact() ? to_double(w->rval(j)) : w->cval(j).real();
            if (!(wj > 0.0)) throw domain_error("lp_norm: weight must be positive cellwise");
        }
        s += std::pow(std::abs(f.cval(j)), p) * wj;
    }
    double measure = to_double(rat_pow(f.field().q(), -static_cast<std::int64_t>(f.level())));
    return std::pow(s * measure, 1.0 / p);
}

Rational lp_norm_pow_exact(const SampledFunction& f, unsigned p, const SampledFunction* w) {
    if (p < 1) throw parameter_error("lp_norm_pow_exact: p must be >= 1");
    Rational s(0);
    for (std::size_t j = 0; j < f.size(); ++j) {
        Rational a = f.rval(j);
        if (a < 0) a = -a;
        Rational term = rat_pow(a, static_cast<std::int64_t>(p));
        if (w) {
            const Rational& wj = w->rval(j);
            if (!(wj > 0)) throw domain_error("lp_norm_pow_exact: weight must be positive");
            term *= wj;
        }
        s += term;
    }
    return s * rat_pow(f.field().q(), -static_cast<std::int64_t>(f.level()));
}

Cplx inner_product(const SampledFunction& f, const SampledFunction& g,
                   const SampledFunction* w) {
    if (f.size() != g.size()) throw parameter_error("inner_product: grid mismatch");
    Cplx s(0.0, 0.0);
    for (std::size_t j = 0; j < f.size(); ++j) {
        Cplx term = f.cval(j) * std::conj(g.cval(j));
        if (w) term *= w->cval(j).real();
        s += term;
    }
    return s * to_double(rat_pow(f.field().q(), -static_cast<std::int64_t>(f.level())));
}

} // namespace lfa
