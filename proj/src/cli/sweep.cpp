#include "sqz/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <ostream>
#include <thread>

namespace sqz::cli {

namespace {

const std::vector<std::string> kSweepable = {"r", "theta", "omega", "Omega", "kappa"};

void apply(RunConfig& cfg, const std::string& name, double v) {
    if (name == "r") cfg.initial.r = v;
    else if (name == "theta") cfg.initial.theta = v;
    else if (name == "omega") cfg.system.params.omega = v;
    else if (name == "Omega") cfg.system.params.Omega = v;
    else if (name == "kappa") cfg.system.params.kappa = v;
    else throw ConfigError("cannot sweep '" + name + "' (expected r, theta, omega, Omega or kappa)");
}

double parse_double(const std::string& s, const std::string& spec) {
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw ConfigError("bad number '" + s + "' in sweep '" + spec + "'");
    return v;
}

SweepRow evaluate(const RunConfig& cfg, double p1, double p2) {
    const Model model = build_model(cfg);
    const auto init = resolve_initial(cfg.initial, model);
    auto product = [&](double tau) { return uncertainty_product(model.cov(init.z, tau)); };
    const auto times = output_times(cfg.time.tau_max, cfg.time.dt_output);
    std::size_t best = 0;
    std::vector<double> values;
    for (double t : times) values.push_back(product(t));
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;
    double peak = values[best];
    // Golden-section refinement of the sampled maximum.
    double a = times[best == 0 ? 0 : best - 1];
    double b = times[std::min(best + 1, times.size() - 1)];
    constexpr double g = 0.6180339887498949;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = product(c), fd = product(d);
    for (int it = 0; it < 80 && b - a > 1e-13 * std::max(1.0, b); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = product(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = product(d);
        }
    }
    peak = std::max({peak, fc, fd});
    return {p1, p2, peak, values.back()};
}

} // namespace

SweepAxis parse_sweep_axis(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("sweep '" + spec + "' must look like name=a:b:n or name=v1,v2,...");
    SweepAxis axis{spec.substr(0, eq), {}};
    if (std::find(kSweepable.begin(), kSweepable.end(), axis.name) == kSweepable.end())
        throw ConfigError("cannot sweep '" + axis.name + "' (expected r, theta, omega, Omega or kappa)");
    const std::string body = spec.substr(eq + 1);
    if (body.find(':') != std::string::npos) {
        const auto c1 = body.find(':'), c2 = body.find(':', c1 + 1);
        if (c2 == std::string::npos) throw ConfigError("range sweep '" + spec + "' needs a:b:n");
        const double lo = parse_double(body.substr(0, c1), spec);
        const double hi = parse_double(body.substr(c1 + 1, c2 - c1 - 1), spec);
        const double n = parse_double(body.substr(c2 + 1), spec);
        if (n < 1 || n != std::floor(n)) throw ConfigError("sweep count must be a positive integer");
        const auto count = static_cast<std::size_t>(n);
        for (std::size_t i = 0; i < count; ++i)
            axis.values.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                                            static_cast<double>(count - 1));
    } else {
        std::size_t start = 0;
        while (start <= body.size()) {
            const auto comma = body.find(',', start);
            axis.values.push_back(parse_double(body.substr(start, comma - start), spec));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    return axis;
}

std::vector<SweepRow> run_sweep(const RunConfig& base, const std::vector<SweepAxis>& axes,
                                unsigned threads) {
    if (axes.size() > 2) throw ConfigError("a sweep varies at most two parameters");
    if (axes.size() == 2 && axes[0].name == axes[1].name)
        throw ConfigError("sweep parameters must differ");
    base.validate();

    struct Job {
        RunConfig cfg;
        double p1, p2;
    };
    std::vector<Job> jobs;
    const double nan = std::nan("");
    const std::vector<double> none{nan};
    const auto& v1 = axes.size() > 0 ? axes[0].values : none;
    const auto& v2 = axes.size() > 1 ? axes[1].values : none;
    for (double a : v1) {
        for (double b : v2) {
            RunConfig cfg = base;
            if (axes.size() > 0) apply(cfg, axes[0].name, a);
            if (axes.size() > 1) apply(cfg, axes[1].name, b);
            cfg.validate();
            jobs.push_back({std::move(cfg), a, b});
        }
    }

    std::vector<SweepRow> rows(jobs.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
    // Each worker fills a fixed stride of rows, so the output order never depends on scheduling.
    std::vector<std::future<void>> workers;
    for (unsigned w = 0; w < threads; ++w) {
        workers.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < jobs.size(); i += threads)
                rows[i] = evaluate(jobs[i].cfg, jobs[i].p1, jobs[i].p2);
        }));
    }
    for (auto& f : workers) f.get();
    return rows;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepAxis>& axes,
                     const std::vector<SweepRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "# param1=" << (axes.size() > 0 ? axes[0].name : "none")
        << " param2=" << (axes.size() > 1 ? axes[1].name : "none") << '\n';
    out << "param1,param2,product_max,product_final\n";
    for (const auto& r : rows)
        out << format_number(r.param1) << ',' << format_number(r.param2) << ','
            << format_number(r.product_max) << ',' << format_number(r.product_final) << '\n';
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

SimulateResult cmd_sweep(const RunConfig& base, const std::vector<SweepAxis>& axes,
                         std::ostream& log) {
    const auto rows = run_sweep(base, axes);
    const std::string path = with_extension(base.output.path, ".csv");
    write_sweep_csv(path, axes, rows);
    log << "wrote " << path << " (" << rows.size() << " rows)\n";
    return {{path}};
}

} // namespace sqz::cli
