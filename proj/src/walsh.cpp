#include "whl/walsh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "whl/martingale.hpp"

namespace whl {

namespace {

// Reverses the low `bits` bits of n: maps the Paley index n to the Hadamard row index.
std::size_t bit_reverse(std::size_t n, unsigned bits)
{
    std::size_t r = 0;
    for (unsigned b = 0; b < bits; ++b) {
        r = (r << 1) | (n & 1);
        n >>= 1;
    }
    return r;
}

double walsh_sign(std::size_t row, std::size_t cell)
{
    return (std::popcount(row & cell) & 1) ? -1.0 : 1.0;
}

void hadamard_in_place(std::vector<double>& v)
{
    for (std::size_t len = 1; len < v.size(); len <<= 1) {
        for (std::size_t start = 0; start < v.size(); start += 2 * len) {
            for (std::size_t j = start; j < start + len; ++j) {
                const double a = v[j];
                const double b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
        }
    }
}

void require_index(std::size_t n, unsigned resolution, const char* what)
{
    if (n == 0 || n > cell_count(resolution)) {
        throw std::out_of_range(std::string(what) + ": index must lie in [1, 2^N]");
    }
}

// sum_k weight(k) f^(k) w_k for k < limit.
template <typename Weight>
GridFunction weighted_synthesis(const WalshSpectrum& spec, std::size_t limit, Weight weight)
{
    WalshSpectrum out{spec.resolution, std::vector<double>(spec.coefficients.size(), 0.0)};
    for (std::size_t k = 0; k < std::min(limit, spec.coefficients.size()); ++k) {
        out.coefficients[k] = weight(k) * spec.coefficients[k];
    }
    return ifwht(out);
}

}  // namespace

GridFunction walsh_function(std::size_t n, unsigned resolution)
{
    if (n >= cell_count(resolution)) throw std::out_of_range("walsh_function: n must be < 2^N");
    const std::size_t row = bit_reverse(n, resolution);
    std::vector<double> v(cell_count(resolution));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = walsh_sign(row, i);
    return GridFunction(resolution, std::move(v));
}

WalshSpectrum fwht(const GridFunction& f)
{
    const unsigned res = f.resolution();
    std::vector<double> h(f.values().begin(), f.values().end());
    hadamard_in_place(h);
    WalshSpectrum spec{res, std::vector<double>(h.size())};
    const double scale = f.cell_weight();
    for (std::size_t n = 0; n < h.size(); ++n) spec.coefficients[n] = h[bit_reverse(n, res)] * scale;
    return spec;
}

GridFunction ifwht(const WalshSpectrum& spectrum)
{
    const unsigned res = spectrum.resolution;
    if (spectrum.coefficients.size() != cell_count(res)) throw std::invalid_argument("ifwht: size mismatch");
    std::vector<double> h(spectrum.coefficients.size());
    for (std::size_t n = 0; n < h.size(); ++n) h[bit_reverse(n, res)] = spectrum.coefficients[n];
    hadamard_in_place(h);
    return GridFunction(res, std::move(h));
}

GridFunction dirichlet_kernel(std::size_t n, unsigned resolution)
{
    require_index(n, resolution, "dirichlet_kernel");
    WalshSpectrum spec{resolution, std::vector<double>(cell_count(resolution), 0.0)};
    std::fill(spec.coefficients.begin(), spec.coefficients.begin() + static_cast<std::ptrdiff_t>(n), 1.0);
    return ifwht(spec);
}

GridFunction fejer_kernel(std::size_t n, unsigned resolution)
{
    require_index(n, resolution, "fejer_kernel");
    WalshSpectrum spec{resolution, std::vector<double>(cell_count(resolution), 0.0)};
    const double dn = static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) spec.coefficients[k] = (dn - static_cast<double>(k)) / dn;
    return ifwht(spec);
}

namespace {

// D(x ∔ t) for a cell-index shift t.
GridFunction translate(const GridFunction& d, std::size_t mask)
{
    std::vector<double> v(d.size());
    for (std::size_t x = 0; x < v.size(); ++x) v[x] = d[x ^ mask];
    return GridFunction(d.resolution(), std::move(v));
}

}  // namespace

GridFunction fejer_dyadic_closed_form(unsigned n, unsigned resolution)
{
    if (n > resolution) throw std::out_of_range("fejer_dyadic_closed_form: n must be <= N");
    const GridFunction d = dirichlet_kernel(cell_count(n), resolution);
    GridFunction sum = std::ldexp(1.0, -static_cast<int>(n)) * d;
    for (unsigned j = 0; j <= n; ++j) {
        sum = sum + std::ldexp(1.0, static_cast<int>(j) - static_cast<int>(n)) * translate(d, digit_mask(j, resolution));
    }
    return 0.5 * sum;
}

GridFunction fejer_kernel_bound(std::size_t n, unsigned resolution)
{
    require_index(n, resolution, "fejer_kernel_bound");
    if (n == cell_count(resolution)) throw std::out_of_range("fejer_kernel_bound: n must be < 2^N");
    const auto m = static_cast<unsigned>(std::bit_width(n));
    std::vector<GridFunction> dirichlet;
    for (unsigned i = 0; i < m; ++i) dirichlet.push_back(dirichlet_kernel(cell_count(i), resolution));
    GridFunction sum(resolution);
    for (unsigned j = 0; j < m; ++j) {
        const std::size_t mask = digit_mask(j, resolution);
        GridFunction inner(resolution);
        for (unsigned i = j; i < m; ++i) inner = inner + dirichlet[i] + translate(dirichlet[i], mask);
        sum = sum + std::ldexp(1.0, static_cast<int>(j) - static_cast<int>(m)) * inner;
    }
    return sum;
}

GridFunction partial_sum(const GridFunction& f, std::size_t n)
{
    if (n == 0) throw std::out_of_range("partial_sum: n must be >= 1");
    if (n >= f.size()) return f;
    return weighted_synthesis(fwht(f), n, [](std::size_t) { return 1.0; });
}

GridFunction fejer_mean(const GridFunction& f, std::size_t n)
{
    if (n == 0) throw std::out_of_range("fejer_mean: n must be >= 1");
    const std::size_t full = f.size();
    if (n <= full) {
        const double dn = static_cast<double>(n);
        return weighted_synthesis(fwht(f), n, [dn](std::size_t k) { return (dn - static_cast<double>(k)) / dn; });
    }
    const double w = static_cast<double>(full) / static_cast<double>(n);
    return w * fejer_mean(f, full) + (1.0 - w) * f;
}

GridFunction fejer_maximal(const GridFunction& f)
{
    const unsigned res = f.resolution();
    const std::size_t size = f.size();
    const WalshSpectrum spec = fwht(f);

    // s_n = sum_{k<n} c_k w_k and t_n = sum_{k<n} k c_k w_k give sigma_n = s_n - t_n / n.
    std::vector<double> partial(size, 0.0);
    std::vector<double> moment(size, 0.0);
    std::vector<double> best(size);
    for (std::size_t i = 0; i < size; ++i) best[i] = std::abs(f[i]);

    for (std::size_t n = 1; n <= size; ++n) {
        const std::size_t k = n - 1;
        const double c = spec.coefficients[k];
        if (c != 0.0) {
            const std::size_t row = bit_reverse(k, res);
            const double kc = static_cast<double>(k) * c;
            for (std::size_t i = 0; i < size; ++i) {
                const double sign = walsh_sign(row, i);
                partial[i] += sign * c;
                moment[i] += sign * kc;
            }
        }
        const double inv = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < size; ++i) best[i] = std::max(best[i], std::abs(partial[i] - moment[i] * inv));
    }
    return GridFunction(res, std::move(best));
}

GridFunction fejer_dyadic_maximal(const GridFunction& f)
{
    std::vector<double> best(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) best[i] = std::abs(f[i]);
    for (unsigned n = 0; n <= f.resolution(); ++n) {
        const GridFunction sigma = fejer_mean(f, cell_count(n));
        for (std::size_t i = 0; i < f.size(); ++i) best[i] = std::max(best[i], std::abs(sigma[i]));
    }
    return GridFunction(f.resolution(), std::move(best));
}

GridFunction partial_sum_via_transform(const GridFunction& f, std::size_t n)
{
    const unsigned res = f.resolution();
    require_index(n, res, "partial_sum_via_transform");
    // n = 2^N: w_n = r_N is finer than the grid; its only digit selects d_{N+1}(f w_n) = f w_n.
    if (n == f.size()) return f;

    const GridFunction w = walsh_function(n, res);
    const Martingale m(make_dyadic(res), f * w);
    std::vector<GridFunction> digits;
    digits.reserve(res);
    for (unsigned k = 0; k < res; ++k) digits.push_back(GridFunction::constant(res, static_cast<double>((n >> k) & 1)));
    return w * martingale_transform(m, digits).terminal();
}

GridFunction dyadic_convolution(const GridFunction& f, const GridFunction& kernel)
{
    require_same_resolution(f.resolution(), kernel.resolution(), "dyadic_convolution");
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t x = 0; x < f.size(); ++x) {
        double s = 0.0;
        for (std::size_t t = 0; t < f.size(); ++t) s += f[t] * kernel[x ^ t];
        out[x] = s * f.cell_weight();
    }
    return GridFunction(f.resolution(), std::move(out));
}

}  // namespace whl
