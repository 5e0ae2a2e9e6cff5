#include "dmca/lasso.hpp"

#include "dmca/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dmca {

void SolverOptions::validate() const {
    if (max_iters < 1) throw ParameterError("solver max_iters must be >= 1");
    if (!(tolerance > 0.0)) throw ParameterError("solver tolerance must be > 0");
}

double gamma_max(const Matrix& dict, const Eigen::Ref<const Vector>& x) {
    if (dict.cols() == 0 || x.size() == 0) return 0.0;
    return (dict.adjoint() * x).cwiseAbs().maxCoeff();
}

double lasso_objective(const Matrix& dict, const Eigen::Ref<const Vector>& x,
                       const Eigen::Ref<const Vector>& coefficients, double gamma) {
    return 0.5 * (x - dict * coefficients).squaredNorm() + gamma * coefficients.cwiseAbs().sum();
}

Vector complex_soft_threshold(const Eigen::Ref<const Vector>& z, double tau) {
    Vector out(z.size());
    for (Index c = 0; c < z.size(); ++c) {
        const double mag = std::abs(z(c));
        out(c) = mag > tau ? z(c) * (1.0 - tau / mag) : Scalar(0.0, 0.0);
    }
    return out;
}

double optimality_violation(const Matrix& dict, const Eigen::Ref<const Vector>& x,
                            const Eigen::Ref<const Vector>& coefficients, double gamma) {
    const Vector g = dict.adjoint() * (x - dict * coefficients);
    double worst = 0.0;
    for (Index c = 0; c < g.size(); ++c) {
        const double mag = std::abs(coefficients(c));
        const double v = mag == 0.0 ? std::max(0.0, std::abs(g(c)) - gamma)
                                    : std::abs(g(c) - gamma * coefficients(c) / mag);
        worst = std::max(worst, v);
    }
    return worst;
}

double spectral_norm_squared(const Matrix& dict, int max_iters, double tolerance) {
    if (dict.cols() == 0) return 0.0;
    Vector v = Vector::Ones(dict.cols()) / std::sqrt(static_cast<double>(dict.cols()));
    double estimate = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        Vector w = dict.adjoint() * (dict * v);
        const double next = w.norm();
        if (next == 0.0) return 0.0;
        v = w / next;
        if (std::abs(next - estimate) <= tolerance * next) return next;
        estimate = next;
    }
    return estimate;
}

namespace {

// Products with the dictionary, either directly (D is m x M) or through the
// Gram matrix when M <= m so each iteration costs O(M^2) instead of O(mM).
class Operator {
public:
    Operator(const Matrix& dict, const Eigen::Ref<const Vector>& x)
        : dict_(dict), x_(x), use_gram_(dict.cols() <= dict.rows()) {
        x_norm2_ = x.squaredNorm();
        if (use_gram_) {
            gram_ = dict.adjoint() * dict;
            corr_ = dict.adjoint() * x;
        }
    }

    // "Image" of a: D a (direct) or G a (Gram).
    Vector image(const Vector& a) const { return use_gram_ ? Vector(gram_ * a) : Vector(dict_ * a); }

    Vector gradient(const Vector& image_y) const {
        return use_gram_ ? Vector(image_y - corr_) : Vector(dict_.adjoint() * (image_y - x_));
    }

    double data_term(const Vector& a, const Vector& image_a) const {
        if (use_gram_) {
            const double quad = a.dot(image_a).real();
            const double lin = a.dot(corr_).real();
            return std::max(0.0, 0.5 * (x_norm2_ - 2.0 * lin + quad));
        }
        return 0.5 * (x_ - image_a).squaredNorm();
    }

private:
    const Matrix& dict_;
    const Eigen::Ref<const Vector>& x_;
    bool use_gram_;
    double x_norm2_ = 0.0;
    Matrix gram_;
    Vector corr_;
};

constexpr double kContinuationFactor = 0.1;

struct Stage {
    int iterations = 0;
    bool converged = false;
    double fixed_point_residual = 0.0;
};

// Relative fixed-point residual ||T(a) - a|| / ||a|| of the shrinkage map
// T(a) = prox(a - grad(a) / L). It vanishes exactly at minimisers, so drift
// along a flat valley of coherent atoms does not hold up convergence.
double shrinkage_residual(const Operator& op, const Vector& a, const Vector& image_a, double gamma,
                          double lipschitz) {
    const Vector shrunk = complex_soft_threshold(a - op.gradient(image_a) / lipschitz, gamma / lipschitz);
    const double a_norm = a.norm();
    return (shrunk - a).norm() / (a_norm > 0.0 ? a_norm : 1.0);
}

// Accelerated proximal gradient from the warm start `a`, with objective-based
// momentum restart and step backtracking.
Stage fista(const Operator& op, Vector& a, Vector& image_a, double gamma, double& lipschitz, double tolerance,
            int budget, bool acceleration) {
    Stage st;
    Vector y = a;
    Vector image_y = image_a;
    double f = op.data_term(a, image_a) + gamma * a.cwiseAbs().sum();
    double t = 1.0;
    bool momentum_active = false;

    while (st.iterations < budget) {
        ++st.iterations;
        const Vector z = y - op.gradient(image_y) / lipschitz;
        Vector a_next = complex_soft_threshold(z, gamma / lipschitz);
        Vector image_next = op.image(a_next);
        const double f_next = op.data_term(a_next, image_next) + gamma * a_next.cwiseAbs().sum();

        if (f_next > f * (1.0 + 1e-15)) {
            if (momentum_active) {
                // Restart: drop the momentum and retry from the current iterate.
                y = a;
                image_y = image_a;
                t = 1.0;
                momentum_active = false;
            } else {
                // A plain step from `a` increased the objective: step too long.
                lipschitz *= 2.0;
            }
            continue;
        }

        const bool settled = std::abs(f - f_next) <= tolerance * std::max(f_next, 1e-300);
        if (acceleration) {
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            const double beta = (t - 1.0) / t_next;
            y = a_next + beta * (a_next - a);
            image_y = image_next + beta * (image_next - image_a);
            t = t_next;
            momentum_active = beta > 0.0;
        } else {
            y = a_next;
            image_y = image_next;
        }
        a = std::move(a_next);
        image_a = std::move(image_next);
        f = f_next;
        if (settled) {
            st.fixed_point_residual = shrinkage_residual(op, a, image_a, gamma, lipschitz);
            if (st.fixed_point_residual <= tolerance) {
                st.converged = true;
                return st;
            }
        }
    }
    st.fixed_point_residual = shrinkage_residual(op, a, image_a, gamma, lipschitz);
    return st;
}

}  // namespace

SparseSolution lasso(const Matrix& dict, const Eigen::Ref<const Vector>& x, double gamma,
                     const SolverOptions& options) {
    if (!(gamma > 0.0)) throw ParameterError("lasso gamma must be > 0");
    if (dict.cols() < 1) throw ParameterError("lasso needs at least one atom");
    if (dict.rows() != x.size()) {
        throw DimensionError("dictionary has " + std::to_string(dict.rows()) +
                             " rows but the signal has length " + std::to_string(x.size()));
    }
    options.validate();

    SparseSolution sol;
    sol.gamma = gamma;
    double lipschitz = spectral_norm_squared(dict) * 1.01;
    if (!(lipschitz > 0.0)) lipschitz = 1.0;

    const Operator op(dict, x);
    Vector a = Vector::Zero(dict.cols());
    Vector image_a = op.image(a);
    int used = 0;

    // Continuation: small penalties are reached through a geometric sequence of
    // larger ones, each warm-starting the next and solved only loosely.
    const double top = gamma_max(dict, x);
    const double stage_tolerance = std::max(options.tolerance, 1e-4);
    for (double g = top * kContinuationFactor; g > gamma && used < options.max_iters; g *= kContinuationFactor) {
        used += fista(op, a, image_a, g, lipschitz, stage_tolerance, options.max_iters - used, options.acceleration)
                    .iterations;
    }
    const Stage last = fista(op, a, image_a, gamma, lipschitz, options.tolerance, options.max_iters - used,
                             options.acceleration);

    sol.iterations = used + last.iterations;
    sol.converged = last.converged;
    sol.fixed_point_residual = last.fixed_point_residual;
    sol.lipschitz = lipschitz;
    const Vector residual = x - dict * a;
    sol.residual_norm = residual.norm();
    sol.objective = 0.5 * residual.squaredNorm() + gamma * a.cwiseAbs().sum();
    sol.coefficients = std::move(a);
    return sol;
}

ColumnDecomposition decompose_column(const ColumnDictionary& dict, const Eigen::Ref<const Vector>& x,
                                     double gamma, int k, const SolverOptions& options) {
    if (dict.size() == 0) throw ParameterError("column dictionary is empty");
    if (k < 1) throw ParameterError("decomposition needs k >= 1");
    ColumnDecomposition out;
    out.solution = lasso(dict.atoms, x, gamma, options);
    out.components.assign(static_cast<std::size_t>(k), Vector::Zero(x.size()));
    out.atoms_per_label.assign(static_cast<std::size_t>(k), 0);
    out.mode_coefficients.resize(dict.size());
    for (Index a = 0; a < dict.size(); ++a) {
        const int label = dict.atom_labels[static_cast<std::size_t>(a)];
        if (label < 1 || label > k) {
            throw ParameterError("atom label " + std::to_string(label) + " outside [1, " +
                                 std::to_string(k) + "]");
        }
        const Scalar coeff = out.solution.coefficients(a);
        ++out.atoms_per_label[static_cast<std::size_t>(label - 1)];
        out.mode_coefficients(a) = coeff / dict.atom_scales[static_cast<std::size_t>(a)];
        if (coeff != Scalar(0.0, 0.0)) {
            out.components[static_cast<std::size_t>(label - 1)] += coeff * dict.atoms.col(a);
        }
    }
    return out;
}

}  // namespace dmca
