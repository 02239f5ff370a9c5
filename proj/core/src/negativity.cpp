#include "hchain/negativity.hpp"

#include <algorithm>
#include <complex>

namespace hchain {

namespace {

// Reorder (q_n, q_m, p_n, p_m) -> (q_n, p_n, q_m, p_m) so the matrix falls
// into the usual one-site blocks A, B and the cross block C.
Eigen::Matrix4d interleave(const Eigen::Matrix4d& g) {
    static const int perm[4] = {0, 2, 1, 3};
    Eigen::Matrix4d out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out(i, j) = g(perm[i], perm[j]);
    return out;
}

double nu_from_invariants(double delta, double det_g) {
    double disc = delta * delta - 4.0 * det_g;
    if (disc < 0.0) {
        if (disc < -1e-9 * std::max(1.0, delta * delta))
            throw NumericalError("log_negativity: negative discriminant " +
                                 std::to_string(disc));
        disc = 0.0;
    }
    const double nu2 = std::max(0.0, (delta - std::sqrt(disc)) / 2.0);
    return std::max(std::sqrt(nu2), 1e-300);
}

void check_physical(const Eigen::Matrix4d& g) {
    const double det_a = g.topLeftCorner<2, 2>().determinant();
    const double det_b = g.bottomRightCorner<2, 2>().determinant();
    const double det_c = g.topRightCorner<2, 2>().determinant();
    const double nu = nu_from_invariants(det_a + det_b + 2.0 * det_c, g.determinant());
    if (nu < 1.0 - 1e-6)
        throw std::invalid_argument("log_negativity: covariance matrix is not a physical "
                                    "state (nu_min = " + std::to_string(nu) + ")");
}

} // namespace

PairReduction reduce_pair(const Eigen::MatrixXd& gamma, std::size_t n, std::size_t m) {
    const Eigen::Index dim = gamma.rows();
    if (dim != gamma.cols() || dim < 4 || dim % 2 != 0)
        throw std::invalid_argument("reduce_pair: need a square matrix of even size >= 4");
    const std::size_t sites = static_cast<std::size_t>(dim) / 2;
    if (n < 1 || m <= n || m > sites)
        throw std::invalid_argument("reduce_pair: need sites 1 <= n < m <= N");

    const Eigen::Index idx[4] = {
        static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(m - 1),
        static_cast<Eigen::Index>(sites + n - 1), static_cast<Eigen::Index>(sites + m - 1)};
    PairReduction pair;
    pair.n = n;
    pair.m = m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            pair.gamma4(i, j) = gamma(idx[i], idx[j]);
    return pair;
}

NegativityResult log_negativity(const PairReduction& pair) {
    const Eigen::Matrix4d g = interleave(pair.gamma4);
    check_physical(g);

    const double det_a = g.topLeftCorner<2, 2>().determinant();
    const double det_b = g.bottomRightCorner<2, 2>().determinant();
    const double det_c = g.topRightCorner<2, 2>().determinant();
    // Partial transposition of the second site flips the sign of det C and
    // leaves the other invariants alone.
    const double delta_pt = det_a + det_b - 2.0 * det_c;

    NegativityResult res;
    res.nu_minus = nu_from_invariants(delta_pt, g.determinant());
    res.log_neg = log_negativity_from_nu(res.nu_minus);
    return res;
}

NegativityResult log_negativity_eigenpath(const PairReduction& pair) {
    const Eigen::Matrix4d g = interleave(pair.gamma4);
    check_physical(g);

    Eigen::Matrix4d t = Eigen::Matrix4d::Identity();
    t(3, 3) = -1.0; // p_m -> -p_m
    const Eigen::Matrix4d gt = t * g * t;

    Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;

    const Eigen::EigenSolver<Eigen::Matrix4d> es(omega * gt);
    double nu = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < 4; ++i)
        nu = std::min(nu, std::abs(es.eigenvalues()[i].imag()));

    NegativityResult res;
    res.nu_minus = std::max(nu, 1e-300);
    res.log_neg = log_negativity_from_nu(res.nu_minus);
    return res;
}

double pair_coupling(const ModeQuadratures& a, const ModeQuadratures& b) {
    return 4.0 * (a.qq * b.pp - a.qp * b.qp);
}

double opposite_pair_nu_minus(const SqueezingProfile& profile, const ChainParams& params) {
    params.validate();
    const std::size_t n = params.n_osc;
    if (profile.size() != n)
        throw std::invalid_argument("opposite_pair_nu_minus: profile must cover modes 1..N");

    // pair_coupling is bilinear in the two quadrature triples, so the
    // parity-class double sums factorize into products of single sums.
    double qq_o = 0.0, pp_o = 0.0, qp_o = 0.0;
    double qq_e = 0.0, pp_e = 0.0, qp_e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (profile[i].mode != i + 1)
            throw std::invalid_argument("opposite_pair_nu_minus: modes must be 1..N in order");
        const ModeQuadratures q = squeezed_quadratures(profile[i]);
        if (profile[i].mode % 2 == 1) {
            qq_o += q.qq;
            pp_o += q.pp;
            qp_o += q.qp;
        } else {
            qq_e += q.qq;
            pp_e += q.pp;
            qp_e += q.qp;
        }
    }

    const double a_oe = 4.0 * (qq_o * pp_e - qp_o * qp_e);
    const double a_eo = 4.0 * (qq_e * pp_o - qp_e * qp_o);
    const double a_oo = 4.0 * (qq_o * pp_o - qp_o * qp_o);
    const double a_ee = 4.0 * (qq_e * pp_e - qp_e * qp_e);

    const double x = a_oe + a_eo;
    const double y = a_oo * a_ee;
    double disc = x * x - 4.0 * y;
    if (disc < 0.0) {
        if (disc < -1e-9 * std::max(1.0, x * x))
            throw NumericalError("opposite_pair_nu_minus: negative discriminant");
        disc = 0.0;
    }
    const double inner = std::max(0.0, x - std::sqrt(disc));
    return std::sqrt(2.0 * inner) / static_cast<double>(n);
}

} // namespace hchain
