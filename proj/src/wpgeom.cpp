#include "vhs/wpgeom.hpp"

#include <complex>
#include <functional>

namespace vhs {

namespace {

constexpr double kPotentialGuard = 1e-8;

Scalar normalized(const TruncatedSeries& q, const MultiIndex& holo, const MultiIndex& anti,
                  int prefactor) {
    Scalar m = holo.tuple_multiplicity() * anti.tuple_multiplicity();
    return Scalar(prefactor) * q.scalar_coeff(holo, anti) / m;
}

MultiIndex units(std::size_t n, std::initializer_list<int> vars) {
    MultiIndex m(n);
    for (int v : vars) m = m.plus(v);
    return m;
}

/// Entry (i,j) of a matrix-valued series as a scalar series.
TruncatedSeries entry_series(const TruncatedSeries& m, std::size_t i, std::size_t j) {
    TruncatedSeries r(m.num_vars(), m.max_order());
    if (!m.polynomial()) r.clear_polynomial_flag();
    for (const auto& [key, value] : m.terms())
        if (!value(i, j).is_zero()) r.set_coeff(key.first, key.second, value(i, j));
    return r;
}

/// All analytic data derived from a potential series centered at the point
/// of interest (constant term 1).
struct GeomCore {
    std::size_t n = 0;
    TruncatedSeries gm{0, 0};           // metric series, N×N
    TruncatedSeries w{0, 0};            // inverse metric series
    std::vector<TruncatedSeries> gamma; // gamma[r](i,s) = Γ^s_{ri}
    std::vector<TruncatedSeries> r_kl;  // r_kl[k*n+l](i,j) = R_{i j̄ k l̄}
};

TruncatedSeries metric_series_of(const TruncatedSeries& qn, std::size_t n) {
    TruncatedSeries l = qn.log_unit();
    TruncatedSeries gm(n, l.max_order() - 2, n, n);
    gm.clear_polynomial_flag();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            TruncatedSeries e = l.derivative(i, TruncatedSeries::VarKind::holo)
                                    .derivative(j, TruncatedSeries::VarKind::antiholo);
            for (const auto& [key, value] : e.terms()) {
                Matrix slot(n, n);
                slot(i, j) = -value(0, 0);
                gm.add_coeff(key.first, key.second, slot);
            }
        }
    return gm;
}

GeomCore build_core(const TruncatedSeries& qn, std::size_t n, double tol) {
    GeomCore c;
    c.n = n;
    c.gm = metric_series_of(qn, n);
    c.w = c.gm.inverse_matrix(tol);
    for (std::size_t r = 0; r < n; ++r)
        c.gamma.push_back(c.gm.derivative(r, TruncatedSeries::VarKind::holo) * c.w);
    for (std::size_t k = 0; k < n; ++k) {
        TruncatedSeries dk = c.gm.derivative(k, TruncatedSeries::VarKind::holo);
        for (std::size_t l = 0; l < n; ++l) {
            TruncatedSeries dl = c.gm.derivative(l, TruncatedSeries::VarKind::antiholo);
            c.r_kl.push_back(dk.derivative(l, TruncatedSeries::VarKind::antiholo) -
                             dk * c.w * dl);
        }
    }
    return c;
}

using PointFn = std::function<Matrix(const std::vector<Scalar>&)>;

Matrix wirtinger(const PointFn& f, const std::vector<Scalar>& p, std::size_t var, bool anti,
                 double h) {
    auto shifted = [&](double dx, double dy) {
        std::vector<Scalar> s = p;
        s[var] = s[var] + Scalar(std::complex<double>(dx, dy));
        return f(s);
    };
    auto diff = [&](double hh) {
        Scalar inv(1.0 / (2.0 * hh));
        Matrix dx = inv * (shifted(hh, 0) - shifted(-hh, 0));
        Matrix dy = inv * (shifted(0, hh) - shifted(0, -hh));
        Scalar half_i = anti ? Scalar(std::complex<double>(0, 0.5))
                             : Scalar(std::complex<double>(0, -0.5));
        return Scalar(0.5) * dx + half_i * dy;
    };
    Matrix coarse = diff(h), fine = diff(h / 2);
    return Scalar(4.0 / 3.0) * fine - Scalar(1.0 / 3.0) * coarse;
}

double scalar_re(const Scalar& s) { return s.to_complex().real(); }

}  // namespace

Scalar WPPotential::quartic(int i, int k, int j, int l) const {
    std::size_t n = num_vars;
    return normalized(q, units(n, {i, k}), units(n, {j, l}), 4);
}

Scalar WPPotential::quintic_holo(int i, int k, int r, int j, int l) const {
    std::size_t n = num_vars;
    return normalized(q, units(n, {i, k, r}), units(n, {j, l}), 12);
}

Scalar WPPotential::quintic_anti(int i, int k, int j, int l, int r) const {
    std::size_t n = num_vars;
    return normalized(q, units(n, {i, k}), units(n, {j, l, r}), 12);
}

WPPotential wp_potential(const VHSModel& model) {
    TruncatedSeries can = canonical_family(model).coeffs;
    // The pairing is a polynomial of twice the family degree; sizing the
    // truncation to that keeps it exact without carrying dead orders.
    int deg = 0;
    for (const auto& [key, value] : can.terms())
        if (!value.is_zero()) deg = std::max(deg, key.first.order());
    can = can.truncated(std::max(2 * deg, model.order));
    TruncatedSeries cc =
        can.conjugate().map_right(model.polarization.real_structure_swap());
    return {can.map_right(model.polarization.gram_qtilde()) * cc.transpose_coeffs(),
            model.num_vars};
}

TruncatedSeries wp_metric_series(const WPPotential& p) {
    if (p.q.max_order() < 2) throw Error("order", "metric needs truncation order at least 2");
    return metric_series_of(p.q, p.num_vars);
}

Matrix metric_at_closed_form(const WPPotential& p, const std::vector<Scalar>& point) {
    std::size_t n = p.num_vars;
    Scalar qv = p.q.eval_scalar(point);
    Matrix g(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        TruncatedSeries dk = p.q.derivative(k, TruncatedSeries::VarKind::holo);
        Scalar dkv = dk.eval_scalar(point);
        for (std::size_t l = 0; l < n; ++l) {
            Scalar dlv =
                p.q.derivative(l, TruncatedSeries::VarKind::antiholo).eval_scalar(point);
            Scalar ddv =
                dk.derivative(l, TruncatedSeries::VarKind::antiholo).eval_scalar(point);
            g(k, l) = (dkv * dlv - qv * ddv) / (qv * qv);
        }
    }
    return g;
}

namespace {

/// Analytic tensors from a precomputed potential; no finite differences.
CurvatureReport analytic_report(const WPPotential& pot, const std::vector<Scalar>& point) {
    const std::size_t n = pot.num_vars;
    if (point.size() != n) throw Error("point", "dimension mismatch");

    bool at_base = true;
    for (const Scalar& s : point) at_base = at_base && s.is_zero();
    TruncatedSeries qc = at_base ? pot.q : pot.q.recenter(point);
    Scalar q0 = qc.scalar_coeff(MultiIndex(n), MultiIndex(n));
    if (scalar_re(q0) <= kPotentialGuard)
        throw Error("point", "potential value " + q0.str() + " is below the validity guard");
    TruncatedSeries qn = qc.scale(Scalar(1) / q0);
    MultiIndex zero(n);
    if (!qn.scalar_coeff(zero, zero).is_one()) {
        if ((qn.scalar_coeff(zero, zero) - Scalar(1)).abs() > 1e-12)
            throw Error("potential", "normalization drift at the sample point");
        qn.set_coeff(zero, zero, Scalar(1));
    }
    // Every reported tensor reads at most five derivatives of log q at the
    // center, so higher orders only cost time.
    if (qn.max_order() > 5) qn = qn.truncated(5);

    bool exact = true;
    for (const auto& [key, value] : qn.terms()) exact = exact && value.all_exact();
    GeomCore core = build_core(qn, n, exact ? 0.0 : 1e-12);

    CurvatureReport rep;
    rep.point = point;
    rep.metric = core.gm.coeff(zero, zero);
    rep.christoffel.assign(n * n * n, Scalar(0));
    for (std::size_t r = 0; r < n; ++r) {
        Matrix g0 = core.gamma[r].coeff(zero, zero);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t s = 0; s < n; ++s) rep.christoffel[idx3(n, r, i, s)] = g0(i, s);
    }
    rep.curvature.assign(n * n * n * n, Scalar(0));
    rep.nabla_r.assign(n * n * n * n * n, Scalar(0));
    rep.nabla_rbar.assign(n * n * n * n * n, Scalar(0));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
            const TruncatedSeries& rs = core.r_kl[k * n + l];
            Matrix r0 = rs.coeff(zero, zero);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    rep.curvature[idx4(n, i, j, k, l)] = r0(i, j);
        }
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l) {
                const TruncatedSeries& rs = core.r_kl[k * n + l];
                Matrix dh = rs.coeff(MultiIndex::unit(n, r), zero);
                Matrix da = rs.coeff(zero, MultiIndex::unit(n, r));
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) {
                        Scalar vh = dh(i, j), va = da(i, j);
                        for (std::size_t s = 0; s < n; ++s) {
                            vh -= rep.christoffel[idx3(n, r, i, s)] *
                                  rep.curvature[idx4(n, s, j, k, l)];
                            vh -= rep.christoffel[idx3(n, r, k, s)] *
                                  rep.curvature[idx4(n, i, j, s, l)];
                            va -= rep.christoffel[idx3(n, r, j, s)].conj() *
                                  rep.curvature[idx4(n, i, s, k, l)];
                            va -= rep.christoffel[idx3(n, r, l, s)].conj() *
                                  rep.curvature[idx4(n, i, j, k, s)];
                        }
                        rep.nabla_r[idx5(n, r, i, j, k, l)] = vh;
                        rep.nabla_rbar[idx5(n, r, i, j, k, l)] = va;
                    }
            }

    return rep;
}

/// Polynomial flattened to complex<double> coefficients for fast pointwise
/// evaluation inside finite-difference loops.
struct FlatPoly {
    struct Term {
        std::vector<int> he, ae;
        std::complex<double> c;
    };
    std::vector<Term> terms;

    std::complex<double> eval(const std::vector<std::vector<std::complex<double>>>& ph,
                              const std::vector<std::vector<std::complex<double>>>& pa) const {
        std::complex<double> acc = 0;
        for (const Term& t : terms) {
            std::complex<double> v = t.c;
            for (std::size_t i = 0; i < t.he.size(); ++i) {
                if (t.he[i]) v *= ph[i][t.he[i]];
                if (t.ae[i]) v *= pa[i][t.ae[i]];
            }
            acc += v;
        }
        return acc;
    }
};

FlatPoly flatten(const TruncatedSeries& s, std::size_t n) {
    FlatPoly f;
    for (const auto& [key, value] : s.terms()) {
        std::complex<double> c = value(0, 0).to_complex();
        if (c == 0.0) continue;
        FlatPoly::Term t;
        t.he.resize(n);
        t.ae.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            t.he[i] = key.first[i];
            t.ae[i] = key.second[i];
        }
        t.c = c;
        f.terms.push_back(std::move(t));
    }
    return f;
}

/// First and mixed-second derivatives of the potential, flattened once so
/// metric samples for finite differences cost plain double arithmetic.
struct FastMetric {
    std::size_t n;
    int max_pow;
    FlatPoly q;
    std::vector<FlatPoly> dh, da, dd;  // dd[k * n + l] = d_k dbar_l q

    explicit FastMetric(const WPPotential& pot) : n(pot.num_vars), max_pow(pot.q.max_order()) {
        q = flatten(pot.q, n);
        std::vector<TruncatedSeries> dhs;
        for (std::size_t k = 0; k < n; ++k) {
            dhs.push_back(pot.q.derivative(k, TruncatedSeries::VarKind::holo));
            dh.push_back(flatten(dhs.back(), n));
            da.push_back(flatten(pot.q.derivative(k, TruncatedSeries::VarKind::antiholo), n));
        }
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l)
                dd.push_back(flatten(dhs[k].derivative(l, TruncatedSeries::VarKind::antiholo), n));
    }

    Matrix metric(const std::vector<Scalar>& point) const {
        std::vector<std::vector<std::complex<double>>> ph(n), pa(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> z = point[i].to_complex();
            ph[i].resize(max_pow + 1);
            pa[i].resize(max_pow + 1);
            ph[i][0] = pa[i][0] = 1.0;
            for (int e = 1; e <= max_pow; ++e) {
                ph[i][e] = ph[i][e - 1] * z;
                pa[i][e] = pa[i][e - 1] * std::conj(z);
            }
        }
        std::complex<double> qv = q.eval(ph, pa);
        Matrix g(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            std::complex<double> dkv = dh[k].eval(ph, pa);
            for (std::size_t l = 0; l < n; ++l) {
                std::complex<double> dlv = da[l].eval(ph, pa);
                std::complex<double> ddv = dd[k * n + l].eval(ph, pa);
                g(k, l) = Scalar((dkv * dlv - qv * ddv) / (qv * qv));
            }
        }
        return g;
    }
};

std::vector<Scalar> fd_curvature_of(const WPPotential& pot, const std::vector<Scalar>& point,
                                    double step) {
    const std::size_t n = pot.num_vars;
    FastMetric fast(pot);
    PointFn metric_fn = [&](const std::vector<Scalar>& p) { return fast.metric(p); };
    Matrix g = fast.metric(point);
    Matrix w = g.inverse(1e-12);
    std::vector<Matrix> dg, dgb;
    for (std::size_t r = 0; r < n; ++r) {
        dg.push_back(wirtinger(metric_fn, point, r, false, step));
        dgb.push_back(wirtinger(metric_fn, point, r, true, step));
    }
    std::vector<Scalar> res(n * n * n * n, Scalar(0));
    for (std::size_t k = 0; k < n; ++k) {
        PointFn dk_fn = [&](const std::vector<Scalar>& p) {
            return wirtinger(metric_fn, p, k, false, step);
        };
        for (std::size_t l = 0; l < n; ++l) {
            Matrix dd = wirtinger(dk_fn, point, l, true, step);
            Matrix second = dg[k] * w * dgb[l];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    res[idx4(n, i, j, k, l)] = dd(i, j) - second(i, j);
        }
    }
    return res;
}

void fd_nabla_of(const WPPotential& pot, const std::vector<Scalar>& point,
                 std::vector<Scalar>& nabla_r, std::vector<Scalar>& nabla_rbar,
                 double step = 1e-4) {
    const std::size_t n = pot.num_vars;
    CurvatureReport here = analytic_report(pot, point);
    PointFn r_fn = [&](const std::vector<Scalar>& p) {
        CurvatureReport rep = analytic_report(pot, p);
        Matrix row(1, rep.curvature.size());
        for (std::size_t a = 0; a < rep.curvature.size(); ++a) row(0, a) = rep.curvature[a];
        return row;
    };
    nabla_r.assign(n * n * n * n * n, Scalar(0));
    nabla_rbar.assign(n * n * n * n * n, Scalar(0));
    for (std::size_t r = 0; r < n; ++r) {
        Matrix dh = wirtinger(r_fn, point, r, false, step);
        Matrix da = wirtinger(r_fn, point, r, true, step);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l) {
                        Scalar vh = dh(0, idx4(n, i, j, k, l));
                        Scalar va = da(0, idx4(n, i, j, k, l));
                        for (std::size_t s = 0; s < n; ++s) {
                            vh -= here.christoffel[idx3(n, r, i, s)] *
                                  here.curvature[idx4(n, s, j, k, l)];
                            vh -= here.christoffel[idx3(n, r, k, s)] *
                                  here.curvature[idx4(n, i, j, s, l)];
                            va -= here.christoffel[idx3(n, r, j, s)].conj() *
                                  here.curvature[idx4(n, i, s, k, l)];
                            va -= here.christoffel[idx3(n, r, l, s)].conj() *
                                  here.curvature[idx4(n, i, j, k, s)];
                        }
                        nabla_r[idx5(n, r, i, j, k, l)] = vh;
                        nabla_rbar[idx5(n, r, i, j, k, l)] = va;
                    }
    }
}

}  // namespace

CurvatureReport geometry_at(const VHSModel& model, const std::vector<Scalar>& point,
                            bool with_fd, double fd_step) {
    WPPotential pot = wp_potential(model);
    CurvatureReport rep = analytic_report(pot, point);
    if (with_fd) {
        Matrix closed = metric_at_closed_form(pot, point);
        rep.fd_residual_metric = Matrix::max_abs_diff(rep.metric, closed);
        std::vector<Scalar> rfd = fd_curvature_of(pot, point, fd_step);
        double res = 0;
        for (std::size_t a = 0; a < rfd.size(); ++a)
            res = std::max(res, (rfd[a] - rep.curvature[a]).abs());
        rep.fd_residual_curvature = res;
        std::vector<Scalar> nr, nrb;
        fd_nabla_of(pot, point, nr, nrb, fd_step);
        res = 0;
        for (std::size_t a = 0; a < nr.size(); ++a) {
            res = std::max(res, (nr[a] - rep.nabla_r[a]).abs());
            res = std::max(res, (nrb[a] - rep.nabla_rbar[a]).abs());
        }
        rep.fd_residual_nabla = res;
    }
    return rep;
}

std::vector<Scalar> fd_curvature(const VHSModel& model, const std::vector<Scalar>& point,
                                 double step) {
    return fd_curvature_of(wp_potential(model), point, step);
}

void fd_nabla(const VHSModel& model, const std::vector<Scalar>& point,
              std::vector<Scalar>& nabla_r, std::vector<Scalar>& nabla_rbar, double step) {
    fd_nabla_of(wp_potential(model), point, nabla_r, nabla_rbar, step);
}

void nabla_curvature_at_base(const VHSModel& model, std::vector<Scalar>& nabla_r,
                             std::vector<Scalar>& nabla_rbar) {
    const int n = model.num_vars;
    WPPotential pot = wp_potential(model);
    nabla_r.assign(static_cast<std::size_t>(n) * n * n * n * n, Scalar(0));
    nabla_rbar = nabla_r;
    for (int r = 0; r < n; ++r)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        nabla_r[idx5(n, r, i, j, k, l)] = -pot.quintic_holo(i, k, r, j, l);
                        nabla_rbar[idx5(n, r, i, j, k, l)] = -pot.quintic_anti(i, k, j, l, r);
                    }
}

const char* to_string(SymmetryVerdict v) {
    switch (v) {
        case SymmetryVerdict::symmetric_at_base: return "symmetric_at_base";
        case SymmetryVerdict::symmetric_on_samples: return "symmetric_on_samples";
        default: return "not_symmetric";
    }
}

SymmetryVerdict symmetry_verdict(const VHSModel& model,
                                 const std::vector<std::vector<Scalar>>& sample_points,
                                 double tol) {
    std::vector<Scalar> nr, nrb;
    nabla_curvature_at_base(model, nr, nrb);
    double base = 0;
    for (const Scalar& s : nr) base = std::max(base, s.abs());
    for (const Scalar& s : nrb) base = std::max(base, s.abs());
    if (base >= tol) return SymmetryVerdict::not_symmetric;
    WPPotential pot = wp_potential(model);
    for (const auto& p : sample_points) {
        fd_nabla_of(pot, p, nr, nrb);
        double m = 0;
        for (const Scalar& s : nr) m = std::max(m, s.abs());
        for (const Scalar& s : nrb) m = std::max(m, s.abs());
        if (m >= tol) return SymmetryVerdict::symmetric_at_base;
    }
    return sample_points.empty() ? SymmetryVerdict::symmetric_at_base
                                 : SymmetryVerdict::symmetric_on_samples;
}

ProjectionCurvature curvature_via_projection(const VHSModel& model) {
    const std::size_t n = model.num_vars;
    WPPotential pot = wp_potential(model);
    // Only the constant coefficient of the projected pairing enters the
    // formula, so second covariant derivatives are needed through order one
    // and everything upstream can be truncated accordingly.
    TruncatedSeries can = canonical_family(model).coeffs.truncated(3);
    bool exact = model.polarization.gram_qtilde().all_exact();
    for (const auto& [key, value] : can.terms()) exact = exact && value.all_exact();
    TruncatedSeries qt = pot.q.truncated(4);
    GeomCore core = build_core(qt, n, exact ? 0.0 : 1e-12);
    TruncatedSeries l = qt.log_unit();
    MultiIndex zero(n);

    std::vector<TruncatedSeries> d1;
    for (std::size_t i = 0; i < n; ++i) {
        TruncatedSeries ki = l.derivative(i, TruncatedSeries::VarKind::holo).scale(Scalar(-1));
        d1.push_back(can.derivative(i, TruncatedSeries::VarKind::holo) + ki * can);
    }
    std::vector<TruncatedSeries> d2;
    for (std::size_t j = 0; j < n; ++j) {
        TruncatedSeries kj = l.derivative(j, TruncatedSeries::VarKind::holo).scale(Scalar(-1));
        for (std::size_t i = 0; i < n; ++i) {
            TruncatedSeries s = d1[i].derivative(j, TruncatedSeries::VarKind::holo) + kj * d1[i];
            for (std::size_t k = 0; k < n; ++k)
                s = s - entry_series(core.gamma[j], i, k) * d1[k];
            d2.push_back(s);  // index j*n + i holds D_j D_i
        }
    }

    Matrix g0 = core.gm.coeff(zero, zero);
    const Matrix& gram = model.polarization.gram_qtilde();
    const Matrix& swap = model.polarization.real_structure_swap();
    ProjectionCurvature out;
    out.curvature.assign(n * n * n * n, Scalar(0));
    CurvatureReport base = analytic_report(pot, std::vector<Scalar>(n, Scalar(0)));
    out.residual = 0;
    std::vector<Matrix> left, right;  // constant rows of the covariant derivatives
    for (const TruncatedSeries& s : d2) {
        Matrix row = s.coeff(zero, zero);
        left.push_back(row * gram);
        right.push_back((row.conj() * swap).transpose());
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l2 = 0; l2 < n; ++l2) {
                    Scalar v = g0(i, j) * g0(k, l2) + g0(i, l2) * g0(k, j) -
                               (left[k * n + i] * right[l2 * n + j])(0, 0);
                    out.curvature[idx4(n, i, j, k, l2)] = v;
                    out.residual = std::max(
                        out.residual, (v - base.curvature[idx4(n, i, j, k, l2)]).abs());
                }
    return out;
}

}  // namespace vhs
