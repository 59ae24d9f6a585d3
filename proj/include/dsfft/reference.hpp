#pragma once

// Floating-point ground truth for the fixed-point pipeline: the O(n^2) direct
// DFT, test-signal generators and error metrics.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "dsfft/fixed_point.hpp"

namespace dsfft {

template <typename Scalar>
using ComplexFrame = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using ComplexFrameXd = ComplexFrame<double>;

/// X[k] = sum_n x[n] e^{-j 2 pi n k / N}, evaluated term by term. The phase
/// index n*k is reduced mod N in integers so large products stay accurate.
template <typename Derived>
ComplexFrame<typename Derived::RealScalar> dft_direct(const Eigen::MatrixBase<Derived>& x)
{
    using Real = typename Derived::RealScalar;
    using Complex = std::complex<Real>;
    const Eigen::Index n = x.size();
    ComplexFrame<Real> out = ComplexFrame<Real>::Zero(n);

    // Root-of-unity table: W^m for m in [0, n).
    ComplexFrame<Real> roots(n);
    for (Eigen::Index m = 0; m < n; ++m) {
        const Real angle = Real(-2) * std::numbers::pi_v<Real> * Real(m) / Real(n);
        roots(m) = Complex(std::cos(angle), std::sin(angle));
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        Complex acc(0, 0);
        for (Eigen::Index i = 0; i < n; ++i)
            acc += Complex(x(i)) * roots((i * k) % n);
        out(k) = acc;
    }
    return out;
}

/// Inverse of dft_direct: conjugate DFT divided by n.
template <typename Derived>
ComplexFrame<typename Derived::RealScalar> idft_direct(const Eigen::MatrixBase<Derived>& spectrum)
{
    using Real = typename Derived::RealScalar;
    const ComplexFrame<Real> conj = spectrum.conjugate();
    return dft_direct(conj).conjugate() / Real(spectrum.size());
}

/// max over k and components of |ref[k] * scale - test[k]|.
template <typename DerivedA, typename DerivedB>
double max_abs_error(const Eigen::MatrixBase<DerivedA>& ref, const Eigen::MatrixBase<DerivedB>& test, double scale)
{
    if (ref.size() != test.size()) throw std::invalid_argument("max_abs_error: length mismatch");
    if (ref.size() == 0) return 0.0;
    const ComplexFrameXd diff = ref.template cast<std::complex<double>>() * scale - test.template cast<std::complex<double>>();
    return std::max(diff.real().cwiseAbs().maxCoeff(), diff.imag().cwiseAbs().maxCoeff());
}

/// 10 log10(signal energy / error energy) against the scaled reference.
/// Returns +infinity when the error energy is exactly zero; throws
/// std::domain_error for an all-zero reference.
template <typename DerivedA, typename DerivedB>
double sqnr_db(const Eigen::MatrixBase<DerivedA>& ref, const Eigen::MatrixBase<DerivedB>& test, double scale)
{
    if (ref.size() != test.size()) throw std::invalid_argument("sqnr_db: length mismatch");
    const ComplexFrameXd scaled = ref.template cast<std::complex<double>>() * scale;
    const double signal = scaled.squaredNorm();
    if (signal == 0.0) throw std::domain_error("sqnr_db: reference has zero energy");
    const double noise = (scaled - test.template cast<std::complex<double>>()).squaredNorm();
    if (noise == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(signal / noise);
}

inline ComplexFrameXd impulse_frame(Eigen::Index n, double amplitude)
{
    ComplexFrameXd x = ComplexFrameXd::Zero(n);
    if (n > 0) x(0) = amplitude;
    return x;
}

inline ComplexFrameXd constant_frame(Eigen::Index n, std::complex<double> value)
{
    return ComplexFrameXd::Constant(n, value);
}

/// amplitude * e^{+j 2 pi bin i / n}.
inline ComplexFrameXd tone_frame(Eigen::Index n, Eigen::Index bin, double amplitude)
{
    ComplexFrameXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>((bin * i) % n) / static_cast<double>(n);
        x(i) = std::polar(amplitude, angle);
    }
    return x;
}

/// Components uniform in [-amplitude, amplitude]. The mapping from the 64-bit
/// engine output is spelled out so frames are identical on every platform.
inline ComplexFrameXd uniform_random_frame(Eigen::Index n, double amplitude, std::mt19937_64& rng)
{
    auto draw = [&] {
        const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
        return amplitude * (2.0 * unit - 1.0);
    };
    ComplexFrameXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = draw();
        const double im = draw();
        x(i) = {re, im};
    }
    return x;
}

inline std::vector<CFx16> to_fixed(const ComplexFrameXd& x)
{
    std::vector<CFx16> out(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) out[static_cast<std::size_t>(i)] = cfx_from_real(x(i));
    return out;
}

inline ComplexFrameXd to_frame(std::span<const CFx16> x)
{
    ComplexFrameXd out(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) out(static_cast<Eigen::Index>(i)) = x[i].value();
    return out;
}

}  // namespace dsfft
