#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <numeric>

namespace oracle {

namespace {

double objective(const Matrix& dict, const Vector& x, const Vector& a, double gamma) {
    return 0.5 * (x - dict * a).squaredNorm() + gamma * a.cwiseAbs().sum();
}

// Cyclic coordinate descent on the problem restricted to `support`.
Vector restricted_cd(const Matrix& dict, const Vector& x, double gamma, const std::vector<Index>& support) {
    Vector a = Vector::Zero(dict.cols());
    if (support.empty()) return a;
    Vector r = x;
    for (int sweep = 0; sweep < 20000; ++sweep) {
        double change = 0.0;
        for (Index c : support) {
            const auto col = dict.col(c);
            const double nrm2 = col.squaredNorm();
            if (nrm2 == 0.0) continue;
            const Scalar z = a(c) + col.dot(r) / nrm2;
            const double mag = std::abs(z);
            const double tau = gamma / nrm2;
            const Scalar next = mag > tau ? z * (1.0 - tau / mag) : Scalar(0.0, 0.0);
            const Scalar delta = next - a(c);
            if (delta != Scalar(0.0, 0.0)) {
                r -= delta * col;
                a(c) = next;
                change = std::max(change, std::abs(delta));
            }
        }
        if (change <= 1e-15 * std::max(1.0, a.cwiseAbs().maxCoeff())) break;
    }
    return a;
}

void for_each_subset(Index n, int max_size, std::vector<Index>& current, Index start,
                     const std::function<void(const std::vector<Index>&)>& fn) {
    fn(current);
    if (static_cast<int>(current.size()) == max_size) return;
    for (Index i = start; i < n; ++i) {
        current.push_back(i);
        for_each_subset(n, max_size, current, i + 1, fn);
        current.pop_back();
    }
}

double group_cost(const std::vector<double>& v, std::size_t lo, std::size_t hi, bool l1, double& center) {
    std::vector<double> g(v.begin() + static_cast<std::ptrdiff_t>(lo), v.begin() + static_cast<std::ptrdiff_t>(hi));
    if (l1) {
        const std::size_t n = g.size();
        center = n % 2 == 1 ? g[n / 2] : 0.5 * (g[n / 2 - 1] + g[n / 2]);
    } else {
        center = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
    }
    double cost = 0.0;
    for (double x : g) cost += l1 ? std::abs(x - center) : (x - center) * (x - center);
    return cost;
}

}  // namespace

LassoResult lasso_by_support_enumeration(const Matrix& dict, const Vector& x, double gamma, int max_support) {
    LassoResult best;
    best.objective = std::numeric_limits<double>::infinity();
    std::vector<Index> current;
    for_each_subset(dict.cols(), max_support, current, 0, [&](const std::vector<Index>& support) {
        Vector a = restricted_cd(dict, x, gamma, support);
        const double f = objective(dict, x, a, gamma);
        if (f < best.objective) {
            best.objective = f;
            best.coefficients = a;
        }
    });
    // Global optimality conditions for the winner.
    const Vector g = dict.adjoint() * (x - dict * best.coefficients);
    double worst = 0.0;
    for (Index c = 0; c < g.size(); ++c) {
        const double mag = std::abs(best.coefficients(c));
        worst = std::max(worst, mag == 0.0 ? std::max(0.0, std::abs(g(c)) - gamma)
                                           : std::abs(g(c) - gamma * best.coefficients(c) / mag));
    }
    best.certified = worst <= 1e-9;
    return best;
}

PartitionResult best_interval_partition(std::vector<double> values, int k, bool l1) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    PartitionResult best;
    best.cost = std::numeric_limits<double>::infinity();
    // cuts[i] = start index of group i + 1; enumerate increasing cut vectors.
    std::vector<std::size_t> cuts(static_cast<std::size_t>(k - 1));
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t idx, std::size_t from) {
        if (idx == cuts.size()) {
            double total = 0.0;
            std::vector<double> centers;
            std::size_t lo = 0;
            for (std::size_t g = 0; g <= cuts.size(); ++g) {
                const std::size_t hi = g < cuts.size() ? cuts[g] : n;
                double c = 0.0;
                total += group_cost(values, lo, hi, l1, c);
                centers.push_back(c);
                lo = hi;
            }
            if (total < best.cost) {
                best.cost = total;
                best.centers.assign(centers.rbegin(), centers.rend());
            }
            return;
        }
        const std::size_t remaining = cuts.size() - idx;  // groups still to open after this cut
        for (std::size_t c = from; c + remaining <= n; ++c) {
            cuts[idx] = c;
            rec(idx + 1, c + 1);
        }
    };
    rec(0, 1);
    return best;
}

Matrix Rand::complex_matrix(Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index c = 0; c < cols; ++c) {
        for (Index r = 0; r < rows; ++r) m(r, c) = complex_normal();
    }
    return m;
}

dmca::RealMatrix Rand::real_matrix(Index rows, Index cols) {
    dmca::RealMatrix m(rows, cols);
    for (Index c = 0; c < cols; ++c) {
        for (Index r = 0; r < rows; ++r) m(r, c) = normal();
    }
    return m;
}

LinearSnapshots linear_snapshots(Index m, Index n, const std::vector<Scalar>& eigenvalues, bool real_data,
                                 Rand& rand) {
    LinearSnapshots out;
    std::vector<Vector> modes;
    std::vector<Scalar> amps;
    for (const Scalar& lam : eigenvalues) {
        Vector phi(m);
        for (Index r = 0; r < m; ++r) phi(r) = real_data && lam.imag() == 0.0 ? Scalar(rand.normal(), 0.0) : rand.complex_normal();
        Scalar b = real_data && lam.imag() == 0.0 ? Scalar(1.0 + rand.uniform(), 0.0)
                                                   : std::polar(1.0 + rand.uniform(), rand.uniform(0.0, 6.283185307179586));
        out.eigenvalues.push_back(lam);
        modes.push_back(phi);
        amps.push_back(b);
        if (real_data && lam.imag() != 0.0) {
            out.eigenvalues.push_back(std::conj(lam));
            modes.push_back(phi.conjugate());
            amps.push_back(std::conj(b));
        }
    }
    out.data = Matrix::Zero(m, n);
    for (std::size_t i = 0; i < modes.size(); ++i) {
        Scalar power(1.0, 0.0);
        for (Index t = 0; t < n; ++t) {
            out.data.col(t) += modes[i] * (power * amps[i]);
            power *= out.eigenvalues[i];
        }
    }
    if (real_data) out.data = out.data.real().cast<Scalar>();
    return out;
}

std::vector<Scalar> sorted_eigenvalues(std::vector<Scalar> values) {
    std::sort(values.begin(), values.end(), [](const Scalar& a, const Scalar& b) {
        const double ma = std::abs(a);
        const double mb = std::abs(b);
        if (std::abs(ma - mb) > 1e-7 * std::max(1.0, std::max(ma, mb))) return ma > mb;
        return a.imag() > b.imag();
    });
    return values;
}

}  // namespace oracle
