#include "hrla/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "hrla/errors.hpp"
#include "hrla/parallel.hpp"

namespace hrla {

std::string_view to_string(Statistic s) noexcept {
    return s == Statistic::terminal ? "terminal" : "running_best";
}

// --- config -----------------------------------------------------------------

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& msg) { throw InvalidArgument("config: " + msg); };
    if (potential != "rastrigin" && potential != "quadratic")
        fail("potential must be rastrigin or quadratic");
    if (d == 0) fail("d must be at least 1");
    if (!(curvature > 0.0)) fail("curvature must be positive");
    if (m == 0 || n == 0 || k == 0) fail("m, n and k must be at least 1");
    if (!(h > 0.0) || !std::isfinite(h)) fail("h must be positive");
    const bool has_schedule = a_low.has_value() || a_high.has_value();
    if (a && has_schedule) fail("give either a or a_low/a_high, not both");
    if (!a && !has_schedule) fail("one of a or a_low/a_high is required");
    if (a && !(*a > 0.0)) fail("a must be positive");
    if (has_schedule) {
        if (!a_low || !a_high) fail("a schedule needs both a_low and a_high");
        if (!(*a_low > 0.0)) fail("a_low must be positive");
        if (!(*a_high > *a_low)) fail("a_high must exceed a_low");
    }
    if (!std::is_sorted(epsilons.begin(), epsilons.end())) fail("epsilons must be sorted ascending");
    for (double e : epsilons)
        if (!(e > 0.0)) fail("epsilons must be positive");
    if (init != "gaussian" && init != "dirac") fail("init must be gaussian or dirac");
    if (init == "gaussian" && !(init_variance > 0.0)) fail("init_variance must be positive");
    if (m > 0xFFFFFFFFULL || n > 0xFFFFFFFFULL) fail("m and n must fit in 32 bits");
}

double ExperimentConfig::final_a() const { return a ? *a : a_high.value_or(0.0); }

std::size_t ExperimentConfig::effective_stride() const {
    if (stride != 0) return stride;
    return k >= 10'000 ? 10 : 1;
}

Potential ExperimentConfig::make_potential() const { return hrla::make_potential(potential, d, curvature); }

InitialDistribution ExperimentConfig::make_initial() const {
    if (init == "dirac") return InitialDistribution::dirac(d, init_point);
    return InitialDistribution::gaussian(d, init_mean, init_variance);
}

ChainSpec ExperimentConfig::make_chain_spec() const {
    ChainSpec spec;
    spec.kind = sampler;
    spec.iterations = k;
    if (a) {
        spec.params = sampler_params(sampler, *a, h);
    } else {
        spec.schedule = AnnealingSchedule{*a_low, *a_high, k};
        spec.params = sampler_params(sampler, *a_low, h);
    }
    return spec;
}

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
        throw InvalidArgument("expected a real number, got '" + text + "'");
    return v;
}

std::uint64_t parse_unsigned(const std::string& text) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw InvalidArgument("expected a non-negative integer, got '" + text + "'");
    return v;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(item));
    }
    return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"potential", [](ExperimentConfig& c, const std::string& v) { c.potential = v; }},
        {"d", [](ExperimentConfig& c, const std::string& v) { c.d = parse_unsigned(v); }},
        {"curvature", [](ExperimentConfig& c, const std::string& v) { c.curvature = parse_double(v); }},
        {"m", [](ExperimentConfig& c, const std::string& v) { c.m = parse_unsigned(v); }},
        {"n", [](ExperimentConfig& c, const std::string& v) { c.n = parse_unsigned(v); }},
        {"k", [](ExperimentConfig& c, const std::string& v) { c.k = parse_unsigned(v); }},
        {"h", [](ExperimentConfig& c, const std::string& v) { c.h = parse_double(v); }},
        {"a", [](ExperimentConfig& c, const std::string& v) { c.a = parse_double(v); }},
        {"a_low", [](ExperimentConfig& c, const std::string& v) { c.a_low = parse_double(v); }},
        {"a_high", [](ExperimentConfig& c, const std::string& v) { c.a_high = parse_double(v); }},
        {"epsilons", [](ExperimentConfig& c, const std::string& v) { c.epsilons = parse_list(v); }},
        {"sampler", [](ExperimentConfig& c, const std::string& v) { c.sampler = parse_sampler_kind(v); }},
        {"init", [](ExperimentConfig& c, const std::string& v) { c.init = v; }},
        {"init_mean", [](ExperimentConfig& c, const std::string& v) { c.init_mean = parse_double(v); }},
        {"init_variance", [](ExperimentConfig& c, const std::string& v) { c.init_variance = parse_double(v); }},
        {"init_point", [](ExperimentConfig& c, const std::string& v) { c.init_point = parse_double(v); }},
        {"seed", [](ExperimentConfig& c, const std::string& v) { c.seed = parse_unsigned(v); }},
        {"workers", [](ExperimentConfig& c, const std::string& v) { c.workers = parse_unsigned(v); }},
        {"stride", [](ExperimentConfig& c, const std::string& v) { c.stride = parse_unsigned(v); }},
        {"statistic",
         [](ExperimentConfig& c, const std::string& v) {
             if (v == "terminal") c.statistic = Statistic::terminal;
             else if (v == "running_best") c.statistic = Statistic::running_best;
             else throw InvalidArgument("statistic must be terminal or running_best");
         }},
    };
    return table;
}

} // namespace

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
    ExperimentConfig cfg;
    std::set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto where = source + ":" + std::to_string(line_no) + ": ";
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string content = trim(line);
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos) throw InvalidArgument(where + "expected 'key = value'");
        const std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw InvalidArgument(where + "unknown key '" + key + "'");
        if (!seen.insert(key).second) throw InvalidArgument(where + "duplicate key '" + key + "'");
        if (value.empty()) throw InvalidArgument(where + "empty value for '" + key + "'");
        try {
            it->second(cfg, value);
        } catch (const InvalidArgument& e) {
            throw InvalidArgument(where + key + ": " + e.what());
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file " + path.string());
    return parse_config(in, path.string());
}

// --- experiment -------------------------------------------------------------

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const Potential potential = cfg.make_potential();
    const InitialDistribution init = cfg.make_initial();
    const ChainSpec spec = cfg.make_chain_spec();
    const std::size_t K = cfg.k;
    const std::size_t stride = cfg.effective_stride();

    ExperimentResult result;
    for (std::size_t it = stride; it <= K; it += stride) result.iterations.push_back(it);
    if (result.iterations.empty() || result.iterations.back() != K) result.iterations.push_back(K);

    result.records.resize(cfg.m);
    std::vector<std::uint64_t> gradient_counts(cfg.m, 0);

    parallel_for(cfg.m, cfg.workers, [&](std::size_t r) {
        constexpr double inf = std::numeric_limits<double>::infinity();
        std::vector<double> iterate_best(K, inf);
        RunRecord& rec = result.records[r];
        rec.run = r;
        rec.terminal_best_value = inf;
        for (std::size_t i = 0; i < cfg.n; ++i) {
            RandomStream stream = substream(cfg.seed, r, i);
            ChainTrace trace;
            double final_value = inf;
            try {
                trace = run_chain(
                    spec, potential, init, stream,
                    [&](std::size_t k, double u) {
                        iterate_best[k] = std::min(iterate_best[k], u);
                        if (k + 1 == K) final_value = u;
                    },
                    false);
            } catch (const Divergence& e) {
                throw Divergence(e.iteration(), "run " + std::to_string(r) + ", sample " +
                                                    std::to_string(i));
            }
            gradient_counts[r] += trace.gradient_evaluations;
            if (final_value < rec.terminal_best_value) {
                rec.terminal_best_value = final_value;
                rec.best_sample = i;
                rec.terminal_best_point = trace.final_state.x;
            }
        }
        double best = inf;
        std::size_t next = 0;
        rec.running_best.reserve(result.iterations.size());
        rec.iterate_best.reserve(result.iterations.size());
        for (std::size_t k = 0; k < K; ++k) {
            best = std::min(best, iterate_best[k]);
            if (next < result.iterations.size() && result.iterations[next] == k + 1) {
                rec.running_best.push_back(best);
                rec.iterate_best.push_back(iterate_best[k]);
                ++next;
            }
        }
    });

    for (auto c : gradient_counts) result.gradient_evaluations += c;

    std::vector<std::vector<double>> traces;
    traces.reserve(cfg.m);
    for (const auto& rec : result.records)
        traces.push_back(cfg.statistic == Statistic::terminal ? rec.iterate_best : rec.running_best);
    result.curve = empirical_probability(traces, result.iterations, potential.minimum().value_or(0.0),
                                         cfg.epsilons);

    SummaryRow& row = result.summary;
    row.h = cfg.h;
    row.a_final = cfg.final_a();
    row.avg = result.curve.terminal.mean;
    row.median = result.curve.terminal.median;
    row.sd = result.curve.terminal.sd;
    row.m = cfg.m;
    row.n = cfg.n;
    row.k = cfg.k;
    row.sampler = cfg.sampler;
    return result;
}

// --- CSV --------------------------------------------------------------------

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw NumericalError("format_number failed");
    return std::string(buf, ptr);
}

void write_curves_csv(std::ostream& out, const ExperimentResult& result) {
    out << "run,iteration,best_value\n";
    for (const auto& rec : result.records)
        for (std::size_t j = 0; j < result.iterations.size(); ++j)
            out << rec.run << ',' << result.iterations[j] << ',' << format_number(rec.running_best[j])
                << '\n';
}

void write_probabilities_csv(std::ostream& out, const ExperimentResult& result) {
    const auto& curve = result.curve;
    out << "iteration,epsilon,p_hat\n";
    for (std::size_t j = 0; j < curve.iterations.size(); ++j)
        for (std::size_t e = 0; e < curve.epsilons.size(); ++e)
            out << curve.iterations[j] << ',' << format_number(curve.epsilons[e]) << ','
                << format_number(curve.p_hat[j][e]) << '\n';
}

void write_summary_csv(std::ostream& out, const ExperimentResult& result) {
    const SummaryRow& s = result.summary;
    out << "h,a_final,avg,median,sd,m,n,k,sampler\n";
    out << format_number(s.h) << ',' << format_number(s.a_final) << ',' << format_number(s.avg) << ','
        << format_number(s.median) << ',' << format_number(s.sd) << ',' << s.m << ',' << s.n << ','
        << s.k << ',' << to_string(s.sampler) << '\n';
}

void write_kl_profile_csv(std::ostream& out, const KlProfile& profile, double h) {
    out << "k,t,kl,floor_estimate\n";
    for (std::size_t k = 0; k < profile.kl.size(); ++k)
        out << k << ',' << format_number(static_cast<double>(k) * h) << ','
            << format_number(profile.kl[k]) << ',' << format_number(profile.floor) << '\n';
}

void write_experiment(const std::filesystem::path& dir, const ExperimentResult& result) {
    std::filesystem::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw InvalidArgument("cannot write " + (dir / name).string());
        return f;
    };
    {
        auto f = open("curves.csv");
        write_curves_csv(f, result);
    }
    {
        auto f = open("probabilities.csv");
        write_probabilities_csv(f, result);
    }
    {
        auto f = open("summary.csv");
        write_summary_csv(f, result);
    }
}

} // namespace hrla
