#pragma once

#include "cesaro/grids.hpp"
#include "cesaro/series.hpp"

#include <span>
#include <string>
#include <vector>

namespace cesaro {

enum class SymbolKind { CesaroLog, Polynomial, BlaschkeFactor, PowerLog, ExplicitCoeffs };

struct SymbolTerm {
    SymbolKind kind = SymbolKind::Polynomial;
    cplx weight{1.0};
    std::vector<cplx> coeffs;   // Polynomial, ExplicitCoeffs
    cplx a{0.0};                // BlaschkeFactor zero
    double power = 1.0;         // PowerLog multiplier
};

/// Analytic symbol g written as a finite sum of weighted atoms.
///
/// Atoms: log 1/(1−z); polynomials; (a−z)/(1−āz) − a (shifted so g(0)=0);
/// a·log 1/(1−z); explicit Taylor coefficients.
class SymbolSpec {
public:
    SymbolSpec() : name_("zero") {}

    static SymbolSpec zero() { return {}; }
    static SymbolSpec cesaro_log();
    static SymbolSpec polynomial(std::vector<cplx> coeffs);
    /// Throws DomainError unless |a| < 1.
    static SymbolSpec blaschke(cplx a);
    static SymbolSpec power_log(double a);
    static SymbolSpec explicit_coeffs(std::vector<cplx> coeffs);

    const std::string& name() const noexcept { return name_; }
    std::span<const SymbolTerm> terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    SymbolSpec scaled(cplx c) const;
    SymbolSpec with_name(std::string name) const;
    friend SymbolSpec operator+(const SymbolSpec& g, const SymbolSpec& h);

    /// g(r e^{iθ}); r = 1 uses closed forms and is singular at declared angles.
    cplx value_polar(double r, double theta) const;
    cplx value(cplx z) const;
    cplx derivative(cplx z) const;

    /// Boundary angles where g is unbounded.
    std::vector<double> singular_angles() const;
    bool bounded_on_circle() const { return singular_angles().empty(); }

    /// Boundary value used for sampling; explicit coefficient lists are read
    /// at radius 1−1/M.
    cplx boundary_value(double theta, std::size_t grid_size) const;

private:
    std::string name_;
    std::vector<SymbolTerm> terms_;
};

PowerSeries symbol_series(const SymbolSpec& s, std::size_t degree);

struct BoundarySamples {
    std::vector<cplx> values;
    /// Nodes adjacent to a declared singular angle.
    std::vector<std::size_t> singular_indices;
};

/// Closed-form samples on the grid. Throws SingularSample when a node lands
/// on a singular angle of the unit circle.
BoundarySamples symbol_boundary(const SymbolSpec& s, const CircleGrid& grid);

} // namespace cesaro
