#pragma once

// Ground-state parameter sweeps over the spin models, with optional local
// noise, multi-information column and finite-difference derivative.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <limits>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qcorr/ccm.hpp"
#include "qcorr/channels.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/spin_models.hpp"

namespace qcorr {

enum class Model { xxz, dxxz, ising };
enum class ChannelKind { paper, standard };

struct ParamRange {
    double min = 0.0;
    double max = 0.0;
    int steps = 2;
};

/// Sample placement. `endpoints` includes min and max; `cell_centers` puts
/// one sample in the middle of each of `steps` equal cells, so an endpoint
/// such as a critical anisotropy is never sampled exactly.
enum class GridKind { endpoints, cell_centers };

inline std::vector<double> grid_points(const ParamRange& r, GridKind kind) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(r.steps));
    if (kind == GridKind::endpoints) {
        const double h = (r.max - r.min) / (r.steps - 1);
        for (int i = 0; i < r.steps; ++i) out.push_back(i == r.steps - 1 ? r.max : r.min + i * h);
    } else {
        const double h = (r.max - r.min) / r.steps;
        for (int i = 0; i < r.steps; ++i) out.push_back(r.min + (i + 0.5) * h);
    }
    return out;
}

inline double grid_step(const ParamRange& r, GridKind kind) {
    return kind == GridKind::endpoints ? (r.max - r.min) / (r.steps - 1) : (r.max - r.min) / r.steps;
}

/// Anisotropy axes (critical point at 1) use cell centers; field and noise axes use endpoints.
inline GridKind anisotropy_grid() { return GridKind::cell_centers; }

struct SweepConfig {
    Model model = Model::xxz;
    int spins = 6;                       // per chain for dxxz
    ParamRange param{-1.5, 1.5, 121};    // delta for xxz/dxxz, lambda for ising
    std::optional<ParamRange> param2;    // lambda for dxxz
    std::optional<ParamRange> noise;     // p range, xxz only
    ChannelKind channel = ChannelKind::paper;
    DistanceUnit unit = DistanceUnit::normalized;
    GroundStatePolicy policy{};
    bool include_tv = false;
    bool derivative = false;
    int threads = 1;
};

struct SweepRow {
    double param = 0.0;
    std::optional<double> param2;
    std::optional<double> p;
    double ccm = 0.0;
    std::optional<double> tv;
    std::optional<double> dccm;
};

struct SweepResult {
    std::vector<std::string> header;
    std::vector<SweepRow> rows;
};

inline int total_qubits(const SweepConfig& c) { return c.model == Model::dxxz ? 2 * c.spins : c.spins; }

inline void validate(const SweepConfig& c) {
    const auto check_range = [](const ParamRange& r, const char* name) {
        if (r.steps < 2) throw Error(ErrorKind::OutOfRange, std::string(name) + ": steps must be >= 2");
        if (!std::isfinite(r.min) || !std::isfinite(r.max) || !(r.min < r.max)) {
            throw Error(ErrorKind::OutOfRange, std::string(name) + ": need finite min < max");
        }
    };
    if (c.spins < 2) throw Error(ErrorKind::OutOfRange, "need at least two spins");
    if (total_qubits(c) > 10) throw Error(ErrorKind::TooLarge, "sweeps are limited to 10 qubits");
    check_range(c.param, "param");
    if (c.model == Model::dxxz) {
        if (!c.param2) throw Error(ErrorKind::OutOfRange, "dxxz needs a lambda range");
        check_range(*c.param2, "lambda");
        if (c.derivative) throw Error(ErrorKind::OutOfRange, "derivative is only defined for 1-D sweeps");
    } else if (c.param2) {
        throw Error(ErrorKind::OutOfRange, "second parameter range only applies to dxxz");
    }
    if (c.noise) {
        if (c.model != Model::xxz) throw Error(ErrorKind::OutOfRange, "noise sweeps require the xxz model");
        check_range(*c.noise, "p");
        if (c.noise->min < 0.0 || c.noise->max > 1.0) throw Error(ErrorKind::OutOfRange, "p must lie in [0, 1]");
        if (c.derivative) throw Error(ErrorKind::OutOfRange, "derivative is only defined for 1-D sweeps");
    }
    if (c.threads < 1) throw Error(ErrorKind::OutOfRange, "threads must be >= 1");
}

inline ComplexMatrix model_hamiltonian(Model model, int spins, double param, double param2 = 0.0) {
    switch (model) {
        case Model::xxz: return build_xxz(spins, param);
        case Model::dxxz: return build_double_xxz(spins, param, param2);
        case Model::ising: return build_ising(spins, param);
    }
    throw Error(ErrorKind::OutOfRange, "unknown model");
}

inline KrausChannel make_channel(ChannelKind kind, double p) {
    return kind == ChannelKind::paper ? paper_damping_channel(p) : standard_amplitude_damping(p);
}

/// Runs `work(i)` for i in [0, count) on `threads` workers. Results are
/// written by index, so output order never depends on scheduling.
template <class Work>
void parallel_for(std::size_t count, int threads, Work&& work) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count && !failed; i = next++) {
                try {
                    work(i);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

/// Central differences on a uniform grid, one-sided at the ends.
inline std::vector<double> finite_difference(const std::vector<double>& y, double h) {
    const std::size_t n = y.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    d.front() = (y[1] - y[0]) / h;
    d.back() = (y[n - 1] - y[n - 2]) / h;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
    return d;
}

inline SweepResult run_sweep(const SweepConfig& c) {
    validate(c);
    SweepResult result;

    const GridKind kind = c.model == Model::ising ? GridKind::endpoints : anisotropy_grid();
    const std::vector<double> xs = grid_points(c.param, kind);
    const std::vector<double> ys = c.param2 ? grid_points(*c.param2, anisotropy_grid()) : std::vector<double>{0.0};
    const std::vector<double> ps = c.noise ? grid_points(*c.noise, GridKind::endpoints) : std::vector<double>{0.0};

    result.header.push_back(c.model == Model::ising ? "lambda" : "delta");
    if (c.param2) result.header.push_back("lambda");
    if (c.noise) result.header.push_back("p");
    result.header.push_back("ccm");
    if (c.include_tv) result.header.push_back("tv");
    if (c.derivative) result.header.push_back("dccm");

    const std::size_t count = xs.size() * ys.size() * ps.size();
    result.rows.resize(count);
    parallel_for(count, c.threads, [&](std::size_t index) {
        const std::size_t ip = index % ps.size();
        const std::size_t iy = (index / ps.size()) % ys.size();
        const std::size_t ix = index / (ps.size() * ys.size());
        SweepRow& row = result.rows[index];
        row.param = xs[ix];
        if (c.param2) row.param2 = ys[iy];
        DensityOperator rho = ground_state(model_hamiltonian(c.model, c.spins, xs[ix], ys[iy]), c.policy);
        if (c.noise) {
            row.p = ps[ip];
            rho = apply_channel_all(rho, make_channel(c.channel, ps[ip]));
        }
        row.ccm = ccm(rho, c.unit).value;
        if (c.include_tv) row.tv = multi_information_tv(rho, c.unit);
    });

    if (c.derivative) {
        std::vector<double> values;
        values.reserve(result.rows.size());
        for (const auto& r : result.rows) values.push_back(r.ccm);
        const auto d = finite_difference(values, grid_step(c.param, kind));
        for (std::size_t i = 0; i < d.size(); ++i) result.rows[i].dccm = d[i];
    }
    return result;
}

// ---------------------------------------------------------------------------
// Output

/// Fixed 9-decimal rendering; never prints "-0.000000000".
inline std::string format_fixed9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", v);
    std::string s(buf);
    if (s == "-0.000000000") s.erase(0, 1);
    return s;
}

inline void write_csv(std::ostream& out, const SweepResult& r) {
    for (std::size_t i = 0; i < r.header.size(); ++i) out << (i ? "," : "") << r.header[i];
    out << '\n';
    for (const auto& row : r.rows) {
        out << format_fixed9(row.param);
        if (row.param2) out << ',' << format_fixed9(*row.param2);
        if (row.p) out << ',' << format_fixed9(*row.p);
        out << ',' << format_fixed9(row.ccm);
        if (row.tv) out << ',' << format_fixed9(*row.tv);
        if (row.dccm) out << ',' << format_fixed9(*row.dccm);
        out << '\n';
    }
}

inline std::string to_csv(const SweepResult& r) {
    std::ostringstream out;
    write_csv(out, r);
    return out.str();
}

/// Writes through a temporary sibling and renames, so a failed run leaves no partial file.
inline void write_csv_file(const std::filesystem::path& path, const SweepResult& r) {
    std::filesystem::path tmp = path;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::ParseError, "cannot write " + tmp.string());
        write_csv(out, r);
        out.flush();
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw Error(ErrorKind::ParseError, "write failed for " + path.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// Noise-sweep diagnostics

struct NoisePeakSummary {
    double p = 0.0;
    double peak_param = 0.0;
    double peak_value = 0.0;
    double prominence = 0.0;  // topographic prominence; 0 when no interior maximum
};

struct NoiseSummary {
    std::vector<NoisePeakSummary> peaks;  // one per p, ascending
    bool monotone_in_p = true;            // ccm non-increasing in p at every delta (1e-7 slack)
};

/// Most prominent interior local maximum of `y`. Prominence is the height
/// above the higher of the two lowest points reached on each side before
/// the curve climbs above the peak (or the grid ends). Returns the index,
/// or the global maximum with prominence 0 when no interior maximum exists.
inline std::pair<std::size_t, double> most_prominent_peak(const std::vector<double>& y) {
    std::size_t best = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    double best_prominence = 0.0;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (!(y[i] >= y[i - 1] && y[i] >= y[i + 1]) || (y[i] == y[i - 1] && y[i] == y[i + 1])) continue;
        double left = y[i];
        for (std::size_t j = i; j-- > 0 && y[j] <= y[i];) left = std::min(left, y[j]);
        double right = y[i];
        for (std::size_t j = i + 1; j < y.size() && y[j] <= y[i]; ++j) right = std::min(right, y[j]);
        const double prominence = y[i] - std::max(left, right);
        if (prominence > best_prominence) {
            best_prominence = prominence;
            best = i;
        }
    }
    return {best, best_prominence};
}

inline NoiseSummary summarize_noise(const SweepResult& r) {
    NoiseSummary s;
    if (r.rows.empty() || !r.rows.front().p) return s;
    std::size_t np = 0;
    while (np < r.rows.size() && r.rows[np].param == r.rows.front().param) ++np;
    const std::size_t nx = r.rows.size() / np;
    for (std::size_t ip = 0; ip < np; ++ip) {
        std::vector<double> y(nx);
        for (std::size_t ix = 0; ix < nx; ++ix) y[ix] = r.rows[ix * np + ip].ccm;
        const auto [at, prominence] = most_prominent_peak(y);
        s.peaks.push_back({*r.rows[ip].p, r.rows[at * np + ip].param, y[at], prominence});
    }
    for (std::size_t ix = 0; ix < nx; ++ix) {
        for (std::size_t ip = 1; ip < np; ++ip) {
            if (r.rows[ix * np + ip].ccm > r.rows[ix * np + ip - 1].ccm + 1e-7) s.monotone_in_p = false;
        }
    }
    return s;
}

}  // namespace qcorr
