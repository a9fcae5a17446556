#include "surfq/spectrum.hpp"

#include "surfq/rng.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>

namespace surfq {

namespace {

/// Crude spectral bracket from a short plain Lanczos run; the returned
/// minimum Ritz value overestimates the true minimum, so callers pad it.
std::pair<double, double> ritz_bracket(const SpMat& a, int steps, std::uint64_t seed) {
    const Eigen::Index n = a.rows();
    steps = std::min<Eigen::Index>(steps, n);
    Rng rng(seed);
    VecX v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
    v.normalize();
    VecX v_prev = VecX::Zero(n);
    VecX alpha(steps), beta(steps);
    double beta_prev = 0.0;
    int m = 0;
    for (; m < steps; ++m) {
        VecX w = a * v;
        alpha[m] = v.dot(w);
        w -= alpha[m] * v + beta_prev * v_prev;
        const double b = w.norm();
        beta[m] = b;
        if (b < 1e-13) {
            ++m;
            break;
        }
        v_prev = v;
        v = w / b;
        beta_prev = b;
    }
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        t(i, i) = alpha[i];
        if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

}  // namespace

SpectrumResult spectrum(const DiscreteOperator& op, int k, double tol, std::uint64_t seed,
                        std::optional<double> shift, int max_subspace) {
    if (op.symmetry() != Symmetry::self_adjoint) {
        throw ConfigError("spectrum: operator must be self-adjoint");
    }
    const Eigen::Index n = op.size();
    if (k < 1 || 4 * static_cast<Eigen::Index>(k) > n) {
        throw ConfigError("spectrum: need 1 <= k <= dimension/4");
    }

    double sigma;
    double span;
    if (shift) {
        sigma = *shift;
        span = std::max(1.0, std::abs(sigma));
    } else {
        const auto [lo, hi] = ritz_bracket(op.matrix(), 40, seed ^ 0xabcdef12345ULL);
        span = std::max(hi - lo, 1e-8);
        sigma = lo - 0.05 * span;
    }

    // Factor op - sigma I; retry with a deeper shift if it fails to be
    // positive definite (the Ritz bracket only overestimates the minimum).
    SpMat ident(n, n);
    ident.setIdentity();
    Eigen::SimplicialLDLT<SpMat> ldlt;
    for (int attempt = 0;; ++attempt) {
        SpMat shifted = op.matrix() - sigma * ident;
        ldlt.compute(shifted);
        if (ldlt.info() == Eigen::Success && ldlt.vectorD().minCoeff() > 0.0) break;
        if (attempt >= 6) {
            throw NoConvergence("spectrum: could not find a shift below the spectrum", 0);
        }
        sigma -= 0.5 * span * (1 << attempt);
    }

    Rng rng(seed);
    VecX v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
    v.normalize();

    const int mmax = static_cast<int>(std::min<Eigen::Index>(max_subspace, n));
    Eigen::MatrixXd basis(n, mmax);
    VecX alpha(mmax), beta(mmax);
    int m = 0;
    double beta_prev = 0.0;

    SpectrumResult result;
    result.shift = sigma;

    const int check_every = std::max(2 * k, 16);
    while (true) {
        // extend the Krylov basis
        const int target = std::min(mmax, (m == 0) ? std::max(2 * k + 16, 32) : m + check_every);
        for (; m < target; ++m) {
            basis.col(m) = v;
            VecX w = ldlt.solve(v);
            alpha[m] = v.dot(w);
            w -= alpha[m] * v;
            if (m > 0) w -= beta_prev * basis.col(m - 1);
            // full reorthogonalization, twice for safety
            for (int pass = 0; pass < 2; ++pass) {
                for (int i = 0; i <= m; ++i) w -= basis.col(i).dot(w) * basis.col(i);
            }
            const double b = w.norm();
            beta[m] = b;
            if (b < 1e-13) {
                ++m;
                break;
            }
            v = w / b;
            beta_prev = b;
        }
        const bool breakdown = beta[m - 1] < 1e-13;
        if (breakdown && m < k) {
            throw NoConvergence("spectrum: Krylov space exhausted before k pairs", m);
        }

        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        if (m >= k) {
            // largest theta of (A - sigma)^-1 = eigenvalues nearest sigma
            std::vector<int> order(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
            std::sort(order.begin(), order.end(), [&es](int a, int b) {
                return es.eigenvalues()[a] > es.eigenvalues()[b];
            });
            VecX vals(k), resid(k);
            Eigen::MatrixXd vecs(n, k);
            double worst = 0.0;
            for (int j = 0; j < k; ++j) {
                const int idx = order[static_cast<std::size_t>(j)];
                const double theta = es.eigenvalues()[idx];
                const double lambda = sigma + 1.0 / theta;
                VecX y = basis.leftCols(m) * es.eigenvectors().col(idx);
                y.normalize();
                vals[j] = lambda;
                vecs.col(j) = y;
                resid[j] = (op.matrix() * y - lambda * y).norm() / (std::abs(lambda) + 1.0);
                worst = std::max(worst, resid[j]);
            }
            if (worst <= tol || m >= mmax || breakdown) {
                if (worst > tol) {
                    throw NoConvergence("spectrum: residual " + std::to_string(worst) +
                                            " above tolerance after " + std::to_string(m) +
                                            " Lanczos steps",
                                        m);
                }
                // sort ascending
                std::vector<int> asc(static_cast<std::size_t>(k));
                for (int j = 0; j < k; ++j) asc[static_cast<std::size_t>(j)] = j;
                std::sort(asc.begin(), asc.end(),
                          [&vals](int a, int b) { return vals[a] < vals[b]; });
                result.eigenvalues.resize(k);
                result.residuals.resize(k);
                result.eigenvectors.resize(n, k);
                for (int j = 0; j < k; ++j) {
                    const int src = asc[static_cast<std::size_t>(j)];
                    result.eigenvalues[j] = vals[src];
                    result.residuals[j] = resid[src];
                    result.eigenvectors.col(j) = vecs.col(src);
                }
                result.iterations = m;
                result.max_residual = worst;
                return result;
            }
        }
        if (m >= mmax) {
            throw NoConvergence("spectrum: subspace limit reached", m);
        }
    }
}

std::vector<std::pair<double, int>> cluster_eigenvalues(const VecX& eigenvalues, double gap) {
    std::vector<std::pair<double, int>> clusters;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        if (!clusters.empty() &&
            std::abs(eigenvalues[i] - clusters.back().first) <= gap) {
            auto& [mean, count] = clusters.back();
            mean = (mean * count + eigenvalues[i]) / (count + 1);
            ++count;
        } else {
            clusters.emplace_back(eigenvalues[i], 1);
        }
    }
    return clusters;
}

}  // namespace surfq
