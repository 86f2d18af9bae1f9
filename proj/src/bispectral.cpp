#include "bispectral.hpp"

#include "errors.hpp"

namespace trigdarboux {

namespace {

constexpr unsigned bit(Var v) { return 1u << static_cast<int>(v); }

void require_trig(const DarbouxTransform& t) {
    if (!t.trigonometric() || t.psi.rho.uses(Var::x))
        fail(ErrorKind::NotTrigonometric, "bispectral checks need a trigonometric transform");
}

bool only_uses(const RatFunc& r, unsigned mask) { return (r.var_mask() & ~mask) == 0; }

} // namespace

bool is_poly_exp(const DiffOp& a) {
    for (const auto& c : a.coeffs())
        if (!c.is_polynomial() || !only_uses(c, bit(Var::w))) return false;
    return true;
}

DifferenceOp bmap(const DiffOp& a) {
    if (!is_poly_exp(a)) fail(ErrorKind::InvalidInput, "bmap needs coefficients polynomial in w: " + a.to_string());
    std::map<unsigned, RatFunc> out;
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
        const RatFunc& c = a.coeff(k);
        GaussianRational scale = c.den().constant_value().inverse();
        for (const auto& [m, coeff] : c.num().terms())
            out[m[Var::w]] += RatFunc(MultiPoly::var(Var::z, static_cast<unsigned>(k)) * (coeff * scale));
    }
    return DifferenceOp(Var::z, std::move(out));
}

RatFunc wave_in_w(const DarbouxTransform& t) {
    require_trig(t);
    return u_to_w(t.psi.rho);
}

BispectralIdentities verify_bispectral_identities(const DarbouxTransform& t) {
    const RatFunc rho = wave_in_w(t);
    const RatFunc w = RatFunc::var(Var::w);
    BispectralIdentities out;
    out.p_side = apply_shift_framed(bmap(t.Pbar), RatFunc(1), w) == RatFunc(t.theta * t.f) * rho;
    out.q_side = apply_shift_framed(bmap(t.Qbar), rho / RatFunc(t.g), w) == RatFunc(t.nu);
    return out;
}

bool verify_difference_eigen(const DarbouxTransform& t) {
    const RatFunc rho = wave_in_w(t);
    DifferenceOp op = DifferenceOp::scalar(Var::z, RatFunc(t.f).inverse()) * bmap(t.Pbar) * bmap(t.Qbar) *
                      DifferenceOp::scalar(Var::z, RatFunc(t.g).inverse());
    return apply_shift_framed(op, rho, RatFunc::var(Var::w)) == RatFunc(t.theta * t.nu) * rho;
}

bool degree_balanced(const RatFunc& r, Var v) {
    const unsigned d = r.num().degree(v);
    if (d != r.den().degree(v)) return false;
    return r.num().coefficient(v, d) == r.den().coefficient(v, d);
}

bool DiscreteWave::balanced() const { return degree_balanced(sigma, Var::z); }

DiscreteWave discrete_wave(const DarbouxTransform& t) {
    const RatFunc rho = wave_in_w(t);
    return {rho.substitute({{Var::w, RatFunc(1) + RatFunc::var(Var::z)}, {Var::z, RatFunc::var(Var::n)}})};
}

DiscreteOperators build_R_S(const DarbouxTransform& t) {
    require_trig(t);
    DiscreteOperators out;
    out.theta = t.theta;
    out.nu = t.nu;
    const RatFunc n = RatFunc::var(Var::n);
    const RatFunc fn = RatFunc(t.f).substitute({{Var::z, n}});
    const RatFunc gn = RatFunc(t.g).substitute({{Var::z, n}});
    DifferenceOp r = DifferenceOp::scalar(Var::n, fn.inverse()) * bmap(t.Pbar).renamed(Var::n);
    DifferenceOp s = bmap(t.Qbar).renamed(Var::n) * DifferenceOp::scalar(Var::n, gn.inverse());

    const RatFunc one_plus_z = RatFunc(1) + RatFunc::var(Var::z);
    const std::map<Var, RatFunc> w_to_frame{{Var::w, one_plus_z}};
    const RatFunc sigma = discrete_wave(t).sigma;
    const RatFunc theta_z = RatFunc(t.theta).substitute(w_to_frame);
    const RatFunc nu_z = RatFunc(t.nu).substitute(w_to_frame);
    out.r_identity = apply_shift_framed(r, RatFunc(1), one_plus_z) == theta_z * sigma;
    out.s_identity = apply_shift_framed(s, sigma, one_plus_z) == nu_z;

    out.R = r.to_delta();
    out.S = s.to_delta();
    const RatFunc one(1);
    out.r_monic_shift = r.order() >= 0 && r.leading() == one;
    out.r_monic_delta = out.R.order() >= 0 && out.R.leading() == one;
    out.s_monic_shift = s.order() >= 0 && s.leading() == one;
    out.s_monic_delta = out.S.order() >= 0 && out.S.leading() == one;
    out.r_order_matches = out.R.order() == static_cast<int>(t.theta.degree(Var::w));
    out.coefficients_in_n = true;
    for (const auto* op : {&out.R, &out.S})
        for (const auto& [m, c] : op->coeffs()) out.coefficients_in_n = out.coefficients_in_n && only_uses(c, bit(Var::n));
    return out;
}

} // namespace trigdarboux
