#pragma once

#include "cesaro/grids.hpp"

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace cesaro {

inline constexpr double kOverflowCap = 1e300;

/// Truncated Taylor expansion Σ_{k≤N} c_k z^k about the origin.
class PowerSeries {
public:
    PowerSeries() : c_{cplx{0.0}} {}
    /// Throws DomainError on an empty list or non-finite entries.
    explicit PowerSeries(std::vector<cplx> coeffs);

    static PowerSeries zero(std::size_t degree) {
        return PowerSeries(std::vector<cplx>(degree + 1, cplx{0.0}));
    }

    std::size_t degree() const noexcept { return c_.size() - 1; }
    std::span<const cplx> coeffs() const noexcept { return c_; }

    /// Coefficient k, zero beyond the declared degree.
    cplx at(std::size_t k) const noexcept { return k < c_.size() ? c_[k] : cplx{0.0}; }
    cplx operator[](std::size_t k) const noexcept { return c_[k]; }

    /// Zero-padded or cut to the requested degree.
    PowerSeries truncated(std::size_t degree) const;

    /// Horner evaluation.
    cplx evaluate(cplx z) const noexcept;

private:
    std::vector<cplx> c_;
};

PowerSeries operator+(const PowerSeries& f, const PowerSeries& g);
PowerSeries operator-(const PowerSeries& f, const PowerSeries& g);
PowerSeries operator*(cplx s, const PowerSeries& f);

PowerSeries derivative(const PowerSeries& f);
PowerSeries primitive(const PowerSeries& f);
PowerSeries multiply(const PowerSeries& f, const PowerSeries& g, std::size_t workdeg);

/// exp(scale·f) via E′ = scale·f′·E. Throws SeriesOverflow once a coefficient
/// exceeds `cap` in modulus.
PowerSeries exp_series(const PowerSeries& f, cplx scale, std::size_t workdeg,
                       double cap = kOverflowCap);

/// f(r e^{iθ_j}) on the grid nodes by one inverse FFT of the folded,
/// radius-scaled coefficients.
std::vector<cplx> evaluate_on_circle(const PowerSeries& f, const CircleGrid& grid);

/// Inverse of evaluate_on_circle for degree < M.
PowerSeries coefficients_from_circle(std::span<const cplx> samples, const CircleGrid& grid,
                                     std::size_t degree);

// CSV with header index,re,im.
void write_series_csv(std::ostream& out, const PowerSeries& f);
PowerSeries read_series_csv(std::istream& in);

} // namespace cesaro
