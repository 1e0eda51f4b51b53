// Copyright 2026 The qfl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent reference computations for the test suite. Nothing here calls
// the routine it is used to check.

#ifndef QFL_TESTS_ORACLES_HPP
#define QFL_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// tr_B as sum_j (I (x) <j|) M (I (x) |j>), built from explicit Kronecker products.
inline Mat partial_trace_b(const Mat &m, int da, int db) {
    Mat out = Mat::Zero(da, da);
    for (int j = 0; j < db; ++j) {
        Mat bra = Mat::Zero(da, da * db);
        for (int a = 0; a < da; ++a) {
            bra(a, a * db + j) = 1.0;
        }
        out += bra * m * bra.adjoint();
    }
    return out;
}

inline Mat partial_trace_a(const Mat &m, int da, int db) {
    Mat out = Mat::Zero(db, db);
    for (int i = 0; i < da; ++i) {
        Mat bra = Mat::Zero(db, da * db);
        for (int b = 0; b < db; ++b) {
            bra(b, i * db + b) = 1.0;
        }
        out += bra * m * bra.adjoint();
    }
    return out;
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Permutation matrix exchanging copies t and t+1 of (C^d)^{(x)N}.
inline Mat swap_matrix(int d, int copies, int t) {
    long n = 1;
    for (int i = 0; i < copies; ++i) {
        n *= d;
    }
    Mat s = Mat::Zero(n, n);
    for (long x = 0; x < n; ++x) {
        std::vector<int> digits(copies);
        long r = x;
        for (int q = copies - 1; q >= 0; --q) {
            digits[q] = static_cast<int>(r % d);
            r /= d;
        }
        std::swap(digits[t], digits[t + 1]);
        long y = 0;
        for (int q = 0; q < copies; ++q) {
            y = y * d + digits[q];
        }
        s(y, x) = 1.0;
    }
    return s;
}

inline double shannon_bits(const std::vector<double> &p) {
    double s = 0.0;
    for (double v : p) {
        if (v > 0.0) {
            s -= v * std::log(v);
        }
    }
    return s / std::log(2.0);
}

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)> &f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

/// Subentropy from the uniform average of y ln y over the probability simplex,
/// y = sum_i t_i l_i:  Q = -(n / ln 2) E[y ln y] - (H_n - 1) / ln 2.
/// Supports n = 1, 2, 3; every l_i must be positive.
inline double subentropy_by_simplex_average(const std::vector<double> &l) {
    const int n = static_cast<int>(l.size());
    auto ylny = [](double y) { return y > 0.0 ? y * std::log(y) : 0.0; };
    double mean = 0.0;
    if (n == 1) {
        return 0.0;
    }
    if (n == 2) {
        mean = simpson([&](double t) { return ylny(t * l[0] + (1 - t) * l[1]); }, 0.0, 1.0, 4000);
    } else if (n == 3) {
        // density 2 on {t0 + t1 <= 1}
        auto inner = [&](double t0) {
            return simpson([&](double t1) { return ylny(t0 * l[0] + t1 * l[1] + (1 - t0 - t1) * l[2]); }, 0.0,
                           1.0 - t0, 400);
        };
        mean = 2.0 * simpson(inner, 0.0, 1.0, 400);
    } else {
        return std::nan("");
    }
    double harmonic = 0.0;
    for (int k = 2; k <= n; ++k) {
        harmonic += 1.0 / k;
    }
    return (-n * mean - harmonic) / std::log(2.0);
}

/// Q = (l_2^2 log2 l_2 - l_1^2 log2 l_1) / (l_1 - l_2), distinct l_1, l_2 > 0.
inline double qubit_subentropy(double l1, double l2) {
    return (l2 * l2 * std::log2(l2) - l1 * l1 * std::log2(l1)) / (l1 - l2);
}

/// Random real orthogonal matrix (QR of a Gaussian matrix, sign-fixed).
inline Eigen::MatrixXd random_orthogonal(int d, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd a(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            a(i, j) = g(rng);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd r = qr.matrixQR();
    for (int j = 0; j < d; ++j) {
        if (r(j, j) < 0) {
            q.col(j) *= -1.0;
        }
    }
    return q;
}

/// Real-symmetric effect O diag(u) O^T, u uniform in [0, 1].
inline Eigen::MatrixXd random_real_effect(int d, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::MatrixXd o = random_orthogonal(d, rng);
    Eigen::VectorXd diag(d);
    for (int i = 0; i < d; ++i) {
        diag(i) = u(rng);
    }
    return o * diag.asDiagonal() * o.transpose();
}

}  // namespace oracle

#endif
