#include "cesaro/series.hpp"

#include "cesaro/errors.hpp"
#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace cesaro {

PowerSeries::PowerSeries(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw DomainError("power series needs at least one coefficient");
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (!std::isfinite(c_[k].real()) || !std::isfinite(c_[k].imag())) {
            throw DomainError("power series coefficient " + std::to_string(k) + " is not finite");
        }
    }
}

PowerSeries PowerSeries::truncated(std::size_t degree) const {
    std::vector<cplx> out(degree + 1, cplx{0.0});
    std::copy_n(c_.begin(), std::min(c_.size(), degree + 1), out.begin());
    return PowerSeries(std::move(out));
}

cplx PowerSeries::evaluate(cplx z) const noexcept {
    cplx acc{0.0};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

PowerSeries operator+(const PowerSeries& f, const PowerSeries& g) {
    const std::size_t n = std::max(f.degree(), g.degree());
    std::vector<cplx> out(n + 1);
    for (std::size_t k = 0; k <= n; ++k) out[k] = f.at(k) + g.at(k);
    return PowerSeries(std::move(out));
}

PowerSeries operator-(const PowerSeries& f, const PowerSeries& g) {
    return f + cplx{-1.0} * g;
}

PowerSeries operator*(cplx s, const PowerSeries& f) {
    std::vector<cplx> out(f.coeffs().begin(), f.coeffs().end());
    for (auto& c : out) c *= s;
    return PowerSeries(std::move(out));
}

PowerSeries derivative(const PowerSeries& f) {
    if (f.degree() == 0) return PowerSeries();
    std::vector<cplx> out(f.degree());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<double>(k + 1) * f[k + 1];
    return PowerSeries(std::move(out));
}

PowerSeries primitive(const PowerSeries& f) {
    std::vector<cplx> out(f.degree() + 2, cplx{0.0});
    for (std::size_t k = 1; k < out.size(); ++k) out[k] = f[k - 1] / static_cast<double>(k);
    return PowerSeries(std::move(out));
}

PowerSeries multiply(const PowerSeries& f, const PowerSeries& g, std::size_t workdeg) {
    std::vector<cplx> out(workdeg + 1, cplx{0.0});
    const std::size_t df = f.degree();
    const std::size_t dg = g.degree();
    for (std::size_t k = 0; k <= workdeg; ++k) {
        const std::size_t lo = k > dg ? k - dg : 0;
        const std::size_t hi = std::min(k, df);
        cplx acc{0.0};
        for (std::size_t i = lo; i <= hi; ++i) acc += f[i] * g[k - i];
        out[k] = acc;
    }
    return PowerSeries(std::move(out));
}

PowerSeries exp_series(const PowerSeries& f, cplx scale, std::size_t workdeg, double cap) {
    const std::size_t df = std::min(f.degree(), workdeg);
    // (scale·j·f_j) for j ≥ 1
    std::vector<cplx> d(df + 1, cplx{0.0});
    for (std::size_t j = 1; j <= df; ++j) d[j] = scale * static_cast<double>(j) * f[j];

    std::vector<cplx> e(workdeg + 1, cplx{0.0});
    e[0] = std::exp(scale * f[0]);
    auto check = [&](std::size_t k) {
        const double m = std::abs(e[k]);
        if (!std::isfinite(m) || m > cap) {
            std::ostringstream msg;
            msg << "exponential series coefficient " << k << " exceeds cap " << cap;
            throw SeriesOverflow(msg.str());
        }
    };
    check(0);
    for (std::size_t k = 1; k <= workdeg; ++k) {
        const std::size_t top = std::min(k, df);
        cplx acc{0.0};
        for (std::size_t j = 1; j <= top; ++j) acc += d[j] * e[k - j];
        e[k] = acc / static_cast<double>(k);
        check(k);
    }
    return PowerSeries(std::move(e));
}

std::vector<cplx> evaluate_on_circle(const PowerSeries& f, const CircleGrid& grid) {
    const std::size_t m = grid.samples();
    const double shift = grid.offset() ? kPi / static_cast<double>(m) : 0.0;
    std::vector<cplx> folded(m, cplx{0.0});
    double rn = 1.0;
    for (std::size_t n = 0; n <= f.degree(); ++n) {
        folded[n % m] += f[n] * std::polar(rn, shift * static_cast<double>(n));
        rn *= grid.radius();
    }
    detail::dft(folded, +1);
    return folded;
}

PowerSeries coefficients_from_circle(std::span<const cplx> samples, const CircleGrid& grid,
                                     std::size_t degree) {
    const std::size_t m = grid.samples();
    if (samples.size() != m) throw DomainError("sample count does not match the circle grid");
    if (degree >= m) throw DomainError("recovered degree must be below the grid size");
    std::vector<cplx> data(samples.begin(), samples.end());
    detail::dft(data, -1);
    const double shift = grid.offset() ? kPi / static_cast<double>(m) : 0.0;
    std::vector<cplx> out(degree + 1);
    double rn = 1.0;
    for (std::size_t n = 0; n <= degree; ++n) {
        out[n] = data[n] / (static_cast<double>(m) * std::polar(rn, shift * static_cast<double>(n)));
        rn *= grid.radius();
    }
    return PowerSeries(std::move(out));
}

void write_series_csv(std::ostream& out, const PowerSeries& f) {
    out << "index,re,im\n";
    char buf[96];
    for (std::size_t k = 0; k <= f.degree(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", k, f[k].real(), f[k].imag());
        out << buf;
    }
}

PowerSeries read_series_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("index,re,im", 0) != 0) {
        throw DomainError("series CSV must start with the header index,re,im");
    }
    std::vector<cplx> coeffs;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string idx, re, im;
        if (!std::getline(fields, idx, ',') || !std::getline(fields, re, ',') ||
            !std::getline(fields, im)) {
            throw DomainError("malformed series CSV row " + std::to_string(row + 1));
        }
        std::size_t k = 0;
        double x = 0.0, y = 0.0;
        try {
            k = std::stoul(idx);
            x = std::stod(re);
            y = std::stod(im);
        } catch (const std::logic_error&) {
            throw DomainError("unparsable number in series CSV row " + std::to_string(row + 1));
        }
        if (k != row) throw DomainError("series CSV indices must be consecutive from 0");
        coeffs.emplace_back(x, y);
        ++row;
    }
    return PowerSeries(std::move(coeffs));
}

} // namespace cesaro
