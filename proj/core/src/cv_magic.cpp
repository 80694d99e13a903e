#include "aqrm/cv_magic.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace aqrm {

namespace {

constexpr double kRawPrefactor = 1.0 / (4.0 * std::numbers::pi);
constexpr double kRescale = 1e150;
constexpr double kImagResidueLimit = 1e-9;
constexpr char kBinaryMagic[8] = {'A', 'Q', 'R', 'M', 'W', 'I', 'G', '1'};

void check_fock(int n) {
    if (n < 0 || n > kMaxFockIndex) {
        throw std::out_of_range("Fock index outside [0, kMaxFockIndex]");
    }
}

std::string shortest(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

PhaseSpaceGrid::PhaseSpaceGrid(double q_max, double p_max, int n_q, int n_p)
    : q_max_(q_max), p_max_(p_max), n_q_(n_q), n_p_(n_p) {
    if (!(q_max > 0.0) || !(p_max > 0.0) || n_q < 2 || n_p < 2) {
        throw std::invalid_argument("PhaseSpaceGrid: extents must be positive and counts >= 2");
    }
}

PhaseSpaceGrid PhaseSpaceGrid::with_spacing(double q_max, double p_max, double spacing) {
    if (!(spacing > 0.0)) {
        throw std::invalid_argument("PhaseSpaceGrid: spacing must be positive");
    }
    auto count = [spacing](double extent) {
        int intervals = static_cast<int>(std::ceil(2.0 * extent / spacing - 1e-9));
        if (intervals % 2 != 0) ++intervals;
        return std::max(intervals, 2) + 1;
    };
    return PhaseSpaceGrid(q_max, p_max, count(q_max), count(p_max));
}

int effective_fock_cutoff(const BosonDensity& rho, double weight_cutoff) {
    const Matrix& m = rho.matrix();
    double cumulative = 0.0;
    for (Index n = 0; n < m.rows(); ++n) {
        cumulative += m(n, n).real();
        if (cumulative >= 1.0 - weight_cutoff) return static_cast<int>(n);
    }
    return static_cast<int>(m.rows()) - 1;
}

PhaseSpaceGrid grid_for_density(const BosonDensity& rho, const GridOptions& options) {
    double extent = 0.0;
    if (options.extent) {
        extent = *options.extent;
    } else {
        const int n_eff = effective_fock_cutoff(rho, options.weight_cutoff);
        extent = std::sqrt(2.0 * n_eff + 1.0) + options.margin;
    }
    return PhaseSpaceGrid::with_spacing(extent, extent, options.spacing);
}

WignerField::WignerField(PhaseSpaceGrid grid, RealMatrix samples, FieldNormalization normalization,
                         double raw_integral)
    : grid_(grid), samples_(std::move(samples)), normalization_(normalization),
      raw_integral_(raw_integral) {
    if (samples_.rows() != grid_.n_q() || samples_.cols() != grid_.n_p()) {
        throw std::invalid_argument("WignerField: samples do not match grid");
    }
}

double WignerField::integral() const { return samples_.sum() * grid_.cell_area(); }

double WignerField::abs_integral() const {
    return samples_.cwiseAbs().sum() * grid_.cell_area();
}

void normalized_laguerre_functions(int m, double x, Eigen::Ref<RealVector> out) {
    if (m < 0 || x < 0.0) {
        throw std::invalid_argument("normalized_laguerre_functions: need m >= 0 and x >= 0");
    }
    const Index count = out.size();
    if (count == 0) return;
    if (x == 0.0) {
        // f_n(0) = delta_{m0}.
        out.setConstant(m == 0 ? 1.0 : 0.0);
        return;
    }
    const double mm = m;
    // The seed may underflow far outside the classical region; the running
    // log scale restores it once the recurrence has grown.
    double log_scale = 0.5 * mm * std::log(x) - 0.5 * x - 0.5 * std::lgamma(mm + 1.0);
    double scale = std::exp(log_scale);
    double prev = 0.0;
    double cur = 1.0;
    out(0) = scale;
    if (count == 1) return;
    double next = (1.0 + mm - x) / std::sqrt(1.0 + mm) * cur;
    prev = cur;
    cur = next;
    out(1) = cur * scale;
    for (Index k = 1; k + 1 < count; ++k) {
        const double kk = static_cast<double>(k);
        next = ((2.0 * kk + 1.0 + mm - x) * cur - std::sqrt(kk * (kk + mm)) * prev) /
               std::sqrt((kk + 1.0) * (kk + 1.0 + mm));
        prev = cur;
        cur = next;
        if (std::abs(cur) > kRescale) {
            cur /= kRescale;
            prev /= kRescale;
            log_scale += std::log(kRescale);
            scale = std::exp(log_scale);
        }
        out(k + 1) = cur * scale;
    }
}

Eigen::MatrixXcd wigner_transition(int n, int n_prime, const PhaseSpaceGrid& grid) {
    check_fock(n);
    check_fock(n_prime);
    const int low = std::min(n, n_prime);
    const int m = std::abs(n_prime - n);
    const double sign = (low % 2 == 0) ? 1.0 : -1.0;
    const double direction = n_prime >= n ? 1.0 : -1.0;
    Eigen::MatrixXcd out(grid.n_q(), grid.n_p());
    RealVector f(low + 1);
    for (int i = 0; i < grid.n_q(); ++i) {
        const double q = grid.q(i);
        for (int j = 0; j < grid.n_p(); ++j) {
            const double p = grid.p(j);
            const double r2 = q * q + p * p;
            normalized_laguerre_functions(m, 2.0 * r2, f);
            const double phi = std::atan2(p, q);
            out(i, j) = kRawPrefactor * sign * f(low) * std::polar(1.0, direction * m * phi);
        }
    }
    return out;
}

RealMatrix fock_wigner_closed_form(int n, const PhaseSpaceGrid& grid) {
    check_fock(n);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    RealMatrix out(grid.n_q(), grid.n_p());
    RealVector f(n + 1);
    for (int i = 0; i < grid.n_q(); ++i) {
        for (int j = 0; j < grid.n_p(); ++j) {
            const double r2 = grid.q(i) * grid.q(i) + grid.p(j) * grid.p(j);
            normalized_laguerre_functions(0, 2.0 * r2, f);
            out(i, j) = sign / std::numbers::pi * f(n);
        }
    }
    return out;
}

WignerField wigner_of_density(const BosonDensity& rho, const PhaseSpaceGrid& grid,
                              std::optional<int> max_fock) {
    const Matrix& c = rho.matrix();
    const int top = std::min(max_fock.value_or(rho.n_max()), rho.n_max());
    check_fock(top);
    const int size = top + 1;

    // Radial coefficients A_m = sum_n (-1)^n rho_{n,n+m} f_n^m and
    // B_m = sum_n (-1)^n rho_{n+m,n} f_n^m depend on r only, so they are shared
    // by the four mirror images (+-q, +-p).
    std::vector<Complex> a(static_cast<std::size_t>(size));
    std::vector<Complex> b(static_cast<std::size_t>(size));
    RealVector f(size);
    RealMatrix samples(grid.n_q(), grid.n_p());
    double worst_imag = 0.0;

    const int nq = grid.n_q();
    const int np = grid.n_p();
    for (int i = nq / 2; i < nq; ++i) {
        const double q = grid.q(i);
        for (int j = np / 2; j < np; ++j) {
            const double p = grid.p(j);
            const double x = 2.0 * (q * q + p * p);
            for (int m = 0; m < size; ++m) {
                auto fm = f.head(size - m);
                normalized_laguerre_functions(m, x, fm);
                Complex sa = 0.0;
                Complex sb = 0.0;
                for (int n = 0; n + m < size; ++n) {
                    const double w = (n % 2 == 0 ? 1.0 : -1.0) * fm(n);
                    sa += w * c(n, n + m);
                    sb += w * c(n + m, n);
                }
                a[static_cast<std::size_t>(m)] = sa;
                b[static_cast<std::size_t>(m)] = sb;
            }
            const double phi0 = std::atan2(p, q);
            const std::array<std::pair<int, int>, 4> images{
                {{i, j}, {nq - 1 - i, j}, {i, np - 1 - j}, {nq - 1 - i, np - 1 - j}}};
            const std::array<double, 4> angles{phi0, std::numbers::pi - phi0, -phi0,
                                               phi0 - std::numbers::pi};
            for (std::size_t t = 0; t < images.size(); ++t) {
                const auto [ii, jj] = images[t];
                if (t > 0 && ((t == 1 && ii == i) || (t == 2 && jj == j) ||
                              (t == 3 && (ii == i || jj == j)))) {
                    continue;  // image coincides with an axis point already written
                }
                const Complex step = std::polar(1.0, angles[t]);
                Complex phase = 1.0;
                Complex total = a[0];
                for (int m = 1; m < size; ++m) {
                    phase *= step;
                    total += a[static_cast<std::size_t>(m)] * phase +
                             b[static_cast<std::size_t>(m)] * std::conj(phase);
                }
                samples(ii, jj) = kRawPrefactor * total.real();
                worst_imag = std::max(worst_imag, kRawPrefactor * std::abs(total.imag()));
            }
        }
    }
    if (worst_imag > kImagResidueLimit) {
        throw std::runtime_error("wigner_of_density: imaginary residue exceeds 1e-9");
    }
    const double raw = samples.sum() * grid.cell_area();
    if (!(std::abs(raw) > 0.0)) {
        throw std::runtime_error("wigner_of_density: field integrates to zero on this grid");
    }
    samples /= raw;
    return WignerField(grid, std::move(samples), FieldNormalization::Renormalized, raw);
}

NegativityResult wigner_log_negativity(const WignerField& field) {
    if (field.normalization() != FieldNormalization::Renormalized) {
        throw std::invalid_argument("wigner_log_negativity: field must be renormalized");
    }
    const PhaseSpaceGrid& g = field.grid();
    const RealMatrix& w = field.samples();
    double total = 0.0;
    double edge = 0.0;
    for (int i = 0; i < g.n_q(); ++i) {
        const bool q_edge = std::abs(g.q(i)) > 0.95 * g.q_max();
        for (int j = 0; j < g.n_p(); ++j) {
            const double v = std::abs(w(i, j));
            total += v;
            if (q_edge || std::abs(g.p(j)) > 0.95 * g.p_max()) edge += v;
        }
    }
    NegativityResult out;
    out.abs_integral = total * g.cell_area();
    out.raw_abs_integral = out.abs_integral * std::abs(field.raw_integral());
    out.mana_bos = std::max(0.0, std::log2(out.abs_integral));
    out.edge_fraction = total > 0.0 ? edge / total : 0.0;
    out.extent_warning = out.edge_fraction > 0.01;
    return out;
}

NegativityResult bosonic_mana(const BosonDensity& rho, const GridOptions& options) {
    const PhaseSpaceGrid grid = grid_for_density(rho, options);
    const int top = effective_fock_cutoff(rho, options.assembly_cutoff);
    return wigner_log_negativity(wigner_of_density(rho, grid, top));
}

void write_wigner_csv(const WignerField& field, std::ostream& out) {
    const PhaseSpaceGrid& g = field.grid();
    out << "# aqrm wigner field\n"
        << "# q_max=" << shortest(g.q_max()) << " p_max=" << shortest(g.p_max())
        << " n_q=" << g.n_q() << " n_p=" << g.n_p() << " dq=" << shortest(g.dq())
        << " dp=" << shortest(g.dp()) << '\n'
        << "# normalization="
        << (field.normalization() == FieldNormalization::Renormalized ? "renormalized" : "raw")
        << " raw_integral=" << shortest(field.raw_integral()) << '\n'
        << "# rows: p ascending; columns: q ascending\n";
    for (int j = 0; j < g.n_p(); ++j) {
        for (int i = 0; i < g.n_q(); ++i) {
            if (i > 0) out << ',';
            out << shortest(field.samples()(i, j));
        }
        out << '\n';
    }
}

namespace {

template <typename T>
void put(std::ostream& out, T v) {
    static_assert(std::endian::native == std::endian::little, "little-endian host required");
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in) throw std::runtime_error("read_wigner_binary: truncated input");
    return v;
}

}  // namespace

void write_wigner_binary(const WignerField& field, std::ostream& out) {
    const PhaseSpaceGrid& g = field.grid();
    out.write(kBinaryMagic, sizeof kBinaryMagic);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n_q()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n_p()));
    put<double>(out, g.q_max());
    put<double>(out, g.p_max());
    put<std::uint8_t>(out, field.normalization() == FieldNormalization::Renormalized ? 1 : 0);
    put<double>(out, field.raw_integral());
    for (int j = 0; j < g.n_p(); ++j) {
        for (int i = 0; i < g.n_q(); ++i) put<double>(out, field.samples()(i, j));
    }
}

WignerField read_wigner_binary(std::istream& in) {
    char magic[sizeof kBinaryMagic];
    in.read(magic, sizeof magic);
    if (!in || !std::equal(magic, magic + sizeof magic, kBinaryMagic)) {
        throw std::runtime_error("read_wigner_binary: bad magic");
    }
    const auto n_q = static_cast<int>(get<std::uint32_t>(in));
    const auto n_p = static_cast<int>(get<std::uint32_t>(in));
    const double q_max = get<double>(in);
    const double p_max = get<double>(in);
    const auto norm = get<std::uint8_t>(in);
    const double raw = get<double>(in);
    PhaseSpaceGrid grid(q_max, p_max, n_q, n_p);
    RealMatrix samples(n_q, n_p);
    for (int j = 0; j < n_p; ++j) {
        for (int i = 0; i < n_q; ++i) samples(i, j) = get<double>(in);
    }
    return WignerField(grid, std::move(samples),
                       norm ? FieldNormalization::Renormalized : FieldNormalization::Raw, raw);
}

}  // namespace aqrm
