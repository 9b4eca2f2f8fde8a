// riskindexlab command-line front end.
//
//   riskindexlab ingest <file>
//   riskindexlab vol <file>
//   riskindexlab index hsrai|sprci|djrri|stablerisk ...
//   riskindexlab diagnose table1|leakage|noise|compound|bias ...
//
// Every flag can also come from a `key = value` file given with --config;
// flags win. Exit codes: 0 ok, 2 input/config, 3 numeric, 4 precondition.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <list>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "riskindexlab/report.hpp"
#include "riskindexlab/riskindexlab.hpp"

#ifndef RISKINDEXLAB_VERSION
#define RISKINDEXLAB_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using namespace riskindexlab;

namespace {

// Keys that steer the run but are not part of the recorded configuration.
const std::vector<std::string> kUnrecorded{"config", "out"};

struct Settings {
    std::string command;
    ConfigMap values;
    std::uint64_t seed = kDefaultSeed;
    fs::path out;

    const std::string& str(const std::string& key) const {
        auto it = values.find(key);
        if (it == values.end()) throw std::logic_error("no setting '" + key + "'");
        return it->second;
    }
    bool has(const std::string& key) const { return !str(key).empty(); }

    double real(const std::string& key) const {
        const auto& s = str(key);
        double v = 0.0;
        if (!detail::parse_real(s, v) || !std::isfinite(v)) {
            throw InputError("--" + key + ": expected a number, got '" + s + "'");
        }
        return v;
    }
    std::optional<double> optional_real(const std::string& key) const {
        const auto& s = str(key);
        if (s.empty() || s == "none") return std::nullopt;
        return real(key);
    }
    std::size_t count(const std::string& key) const {
        const auto& s = str(key);
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
            throw InputError("--" + key + ": expected a non-negative integer, got '" + s + "'");
        }
        return v;
    }
    std::vector<std::string> list(const std::string& key) const {
        std::vector<std::string> out;
        for (auto f : detail::split_fields(str(key))) {
            if (!f.empty()) out.emplace_back(f);
        }
        return out;
    }
    fs::path path(const std::string& key) const {
        if (!has(key)) throw InputError("missing required --" + key);
        return str(key);
    }
};

struct Leaf {
    std::string name;
    CLI::App* app = nullptr;
    ConfigMap defaults;
    std::map<std::string, std::string> given;
    std::map<std::string, CLI::Option*> options;
    std::function<void(const Settings&)> run;
};

const std::map<std::string, std::string> kHelp{
    {"input", "input CSV (date,level)"},
    {"date-col", "date column name"},
    {"value-col", "value column name"},
    {"config", "key = value settings file; flags override it"},
    {"out", "output directory"},
    {"format", "report format: csv or jsonl"},
    {"seed", "master seed (falls back to RISKINDEXLAB_SEED, then 42)"},
    {"tv", "target volatility"},
    {"cap", "leverage cap ('none' for uncapped)"},
    {"floor", "leverage floor"},
    {"lag", "volatility lag in rebalance periods"},
    {"method", "volatility method: sample, ewma-long, ewma-short"},
    {"lambda-long", "long EWMA decay"},
    {"lambda-short", "short EWMA decay"},
    {"n", "return horizon in observations"},
    {"window", "observations in the volatility (or noise) window"},
    {"annualization", "observations per year"},
    {"rebalance-every", "observations between rebalances"},
    {"base", "index base level"},
    {"day-count", "default, ACT/360 or ACT/365"},
    {"rates", "rate CSV (date,rate)"},
    {"flat-rate", "constant cash rate p.a. when no rate file is given"},
    {"accrual", "simple-rate or roll-3m"},
    {"ir2m", "2-month rate CSV for roll-3m"},
    {"ir3m", "3-month rate CSV for roll-3m"},
    {"roll-days", "roll-3m cycle length in days"},
    {"stocks", "stock CMAC levels CSV (monthly)"},
    {"bonds", "bond CMAC levels CSV (monthly)"},
    {"cash", "cash CMAC levels CSV (monthly)"},
    {"risk-fraction", "target risk as a fraction of all-stock risk"},
    {"lookback", "months in the risk window"},
    {"grid", "weight grid resolution (1/grid)"},
    {"min-weight", "minimum weight per CMAC"},
    {"measure", "semivariance or semideviation"},
    {"contracts", "comma-separated futures level CSVs; synthetic when empty"},
    {"threshold", "minimum relative position change that trades"},
    {"cost", "transaction cost per unit of traded notional"},
    {"cov-window", "returns in the covariance estimate"},
    {"cash-rate", "money-market rate p.a."},
    {"cash-fraction", "share of value earning the cash rate"},
    {"realized-window", "returns in the rolling realized volatility"},
    {"band", "relative tolerance around the target"},
    {"assets", "synthetic assets"},
    {"days", "synthetic observations"},
    {"switch-day", "first observation of the second regime"},
    {"vol-before", "volatility before the switch"},
    {"vol-after", "volatility after the switch"},
    {"drift", "annual drift"},
    {"correlation", "pairwise shock correlation"},
    {"rv-min", "first RV row"},
    {"rv-max", "last RV row"},
    {"step", "RV step"},
    {"lags", "comma-separated rebalance intervals"},
    {"index", "index levels CSV"},
    {"market", "market levels CSV"},
    {"returns", "scenario file, one comma-separated return row per line"},
    {"block", "rows per block; differences restart at each block (default: 13 for the built-in ladders, else all rows)"},
};

ConfigMap with_common(ConfigMap m) {
    m.emplace("config", "");
    m.emplace("out", ".");
    m.emplace("format", "csv");
    m.emplace("seed", "");
    return m;
}

const ConfigMap kVolKeys{{"method", "ewma-short"}, {"lambda-long", "0.97"}, {"lambda-short", "0.94"},
                         {"n", "1"},               {"window", "252"},       {"annualization", "252"}};

ConfigMap merged(ConfigMap a, const ConfigMap& b) {
    for (const auto& kv : b) a.insert_or_assign(kv.first, kv.second);
    return a;
}

// ---------------------------------------------------------------------------
// Settings → library parameters
// ---------------------------------------------------------------------------

VolRecipe vol_recipe(const Settings& s) {
    VolRecipe r;
    r.method = parse_vol_method(s.str("method"));
    r.lambda_long = s.real("lambda-long");
    r.lambda_short = s.real("lambda-short");
    r.horizon = s.count("n");
    r.window = s.count("window");
    r.annualization = s.real("annualization");
    r.ewma().validate();
    return r;
}

LeverageParams leverage_params(const Settings& s) {
    LeverageParams p;
    p.target_vol = s.real("tv");
    p.cap = s.real("cap");
    p.floor = s.real("floor");
    p.lag = s.count("lag");
    p.validate();
    return p;
}

std::optional<DayCount> day_count(const Settings& s) {
    const auto& v = s.str("day-count");
    if (v == "default") return std::nullopt;
    if (v == "ACT/360" || v == "act360") return DayCount::act360;
    if (v == "ACT/365" || v == "act365") return DayCount::act365;
    throw InputError("--day-count: expected default, ACT/360 or ACT/365, got '" + v + "'");
}

RiskControlOptions control_options(const Settings& s) {
    RiskControlOptions o;
    o.rebalance_every = s.count("rebalance-every");
    o.base = s.real("base");
    o.day_count = day_count(s);
    return o;
}

LevelSeries load_levels(const Settings& s, const std::string& key) {
    return ingest_csv(s.path(key));
}

// ---------------------------------------------------------------------------
// Artifact writers
// ---------------------------------------------------------------------------

std::ofstream open_output(const Settings& s, const std::string& file) {
    const fs::path p = s.out / file;
    std::ofstream os(p, std::ios::binary);
    if (!os) throw InputError("cannot write " + p.string());
    std::cout << "wrote " << p.string() << '\n';
    return os;
}

Json metadata(const Settings& s) {
    return artifact_metadata(s.command, s.seed, s.values, RISKINDEXLAB_VERSION);
}

// Provenance as '#' comment lines; the CSV reader skips them.
void write_csv_header(std::ostream& os, const Settings& s) {
    const auto meta = metadata(s);
    os << "# riskindexlab " << RISKINDEXLAB_VERSION << ' ' << s.command << '\n';
    os << "# seed = " << s.seed << '\n';
    os << "# config_digest = " << meta["config_digest"].get<std::string>() << '\n';
    for (const auto& [k, v] : s.values) os << "# " << k << " = " << v << '\n';
}

void write_json(const Settings& s, const std::string& file, Json body) {
    Json doc = metadata(s);
    for (auto& [k, v] : body.items()) doc[k] = std::move(v);
    auto os = open_output(s, file);
    os << doc.dump(2) << '\n';
}

// One report in the chosen format: a CSV table, or JSON lines with a leading
// metadata record.
void write_report(const Settings& s, const std::string& stem,
                  const std::function<void(std::ostream&)>& csv, const Json& rows) {
    const auto& fmt = s.str("format");
    if (fmt == "csv") {
        auto os = open_output(s, stem + ".csv");
        write_csv_header(os, s);
        csv(os);
    } else if (fmt == "jsonl") {
        auto os = open_output(s, stem + ".jsonl");
        os << Json{{"meta", metadata(s)}}.dump() << '\n';
        for (const auto& r : rows) os << r.dump() << '\n';
    } else {
        throw InputError("--format: expected csv or jsonl, got '" + fmt + "'");
    }
}

void write_index(const Settings& s, const LevelSeries& levels, Json sidecar) {
    {
        auto os = open_output(s, "index.csv");
        write_csv_header(os, s);
        write_levels(os, levels);
    }
    write_json(s, "index.json", std::move(sidecar));
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

void cmd_ingest(const Settings& s) {
    const fs::path in = s.path("input");
    const auto series = ingest_csv(in, {s.str("date-col"), s.str("value-col")});
    {
        auto os = open_output(s, series.label() + ".csv");
        write_csv_header(os, s);
        write_levels(os, series);
    }
    Json body{{"label", series.label()}, {"rows", series.size()}};
    if (series.size() > 0) {
        body["first"] = series.date(0).iso();
        body["last"] = series.date(series.size() - 1).iso();
    }
    write_json(s, "ingest.json", std::move(body));
}

void cmd_vol(const Settings& s) {
    const auto series = load_levels(s, "input");
    const auto est = latest_vol(series, vol_recipe(s));
    write_json(s, "vol.json", {{"input", series.label()}, {"estimate", to_json(est)}});
    std::cout << "vol " << format_double(est.value) << '\n';
}

void cmd_hsrai(const Settings& s) {
    const auto underlying = load_levels(s, "input");
    DatedSeries rates = s.has("rates") ? ingest_rates(s.path("rates"))
                                       : s.has("flat-rate")
                                             ? DatedSeries::flat(underlying.dates(), s.real("flat-rate"), "rate")
                                             : throw InputError("hsrai needs --rates or --flat-rate");
    const auto res = run_hsrai(underlying, rates, leverage_params(s), vol_recipe(s), control_options(s));
    write_index(s, res.as_levels(), to_json(res));
}

void cmd_sprci(const Settings& s) {
    const auto underlying = load_levels(s, "input");
    CashRates rates;
    if (s.has("rates")) {
        rates.rate = ingest_rates(s.path("rates"));
    } else if (s.has("flat-rate")) {
        rates.rate = DatedSeries::flat(underlying.dates(), s.real("flat-rate"), "rate");
    }
    if (s.has("ir2m")) rates.ir2m = ingest_rates(s.path("ir2m"));
    if (s.has("ir3m")) rates.ir3m = ingest_rates(s.path("ir3m"));
    auto opts = control_options(s);
    opts.accrual = parse_accrual(s.str("accrual"));
    opts.roll_days = s.count("roll-days");
    const auto res = run_sprci(underlying, rates, leverage_params(s), vol_recipe(s), opts);
    write_index(s, res.as_levels(), to_json(res));
}

void cmd_djrri(const Settings& s) {
    DjrriOptions o;
    o.risk_fraction = s.real("risk-fraction");
    o.lookback = s.count("lookback");
    o.grid = s.count("grid");
    o.min_weight = s.real("min-weight");
    o.measure = parse_risk_measure(s.str("measure"));
    o.base = s.real("base");
    o.validate();
    const auto res = run_djrri(load_levels(s, "stocks"), load_levels(s, "bonds"),
                               load_levels(s, "cash"), o);
    write_index(s, res.composite, to_json(res));
}

RegimeSwitchScenario scenario(const Settings& s) {
    RegimeSwitchScenario sc;
    sc.days = s.count("days");
    sc.switch_day = s.count("switch-day");
    sc.vol_before = s.real("vol-before");
    sc.vol_after = s.real("vol-after");
    sc.drift = s.real("drift");
    if (s.values.count("assets")) sc.assets = s.count("assets");
    if (s.values.count("correlation")) sc.correlation = s.real("correlation");
    sc.validate();
    return sc;
}

void cmd_stablerisk(const Settings& s) {
    StableRiskParams p;
    p.target_vol = s.real("tv");
    p.threshold = s.real("threshold");
    p.cost_rate = s.real("cost");
    p.cov_window = s.count("cov-window");
    p.rebalance_every = s.count("rebalance-every");
    p.cash_rate = s.real("cash-rate");
    p.cash_fraction = s.real("cash-fraction");
    p.base = s.real("base");
    p.realized_window = s.count("realized-window");
    p.band = s.real("band");
    p.validate();
    std::vector<LevelSeries> contracts;
    if (s.has("contracts")) {
        for (const auto& f : s.list("contracts")) contracts.push_back(ingest_csv(f));
    } else {
        Rng rng(derive_seed(s.seed, 0));
        contracts = simulate_regime_switch(scenario(s), rng);
    }
    const auto res = simulate_stablerisk(contracts, p);
    write_index(s, res.as_levels(), to_json(res));
    std::cout << "band exits " << res.band_exits << ", max deviation "
              << format_double(res.max_deviation) << '\n';
}

void cmd_table1(const Settings& s) {
    const auto table = lf_sensitivity_table(s.real("tv"), s.real("rv-min"), s.real("rv-max"),
                                            s.real("step"), s.optional_real("cap"), s.real("floor"));
    Json rows = Json::array();
    for (const auto& r : table) {
        rows.push_back({{"tv", r.tv}, {"rv", r.rv}, {"delta_rv", r.delta_rv}, {"lf", r.lf},
                        {"delta_lf", r.delta_lf}});
    }
    write_report(s, "table1", [&](std::ostream& os) { write_sensitivity_csv(os, table); }, rows);
}

void cmd_leakage(const Settings& s) {
    LeakageConfig cfg;
    cfg.scenario = scenario(s);
    cfg.params = leverage_params(s);
    cfg.recipe = vol_recipe(s);
    cfg.lags.clear();
    for (const auto& f : s.list("lags")) {
        Settings one = s;
        one.values["lags"] = f;
        cfg.lags.push_back(one.count("lags"));
    }
    cfg.rate = s.real("flat-rate");
    cfg.seed = s.seed;
    const auto rep = s.has("input") ? leakage_experiment(load_levels(s, "input"), cfg)
                                    : leakage_experiment(cfg);
    Json rows = Json::array();
    for (const auto& p : rep.points) {
        rows.push_back({{"lag", p.lag}, {"realized_vol", p.realized_vol}, {"leakage", p.leakage}});
    }
    write_report(s, "leakage", [&](std::ostream& os) { write_leakage_csv(os, rep); }, rows);
    write_json(s, "leakage.json", to_json(rep));
    std::cout << "realized vol non-decreasing in lag: " << (rep.non_decreasing ? "yes" : "no") << '\n';
}

void cmd_noise(const Settings& s) {
    const auto n = noise(load_levels(s, "index"), load_levels(s, "market"), s.count("window"));
    Json rows = Json::array();
    for (std::size_t i = 0; i < n.values.size(); ++i) {
        rows.push_back({{"date", n.dates[i].iso()}, {"noise", n.values[i]}});
    }
    write_report(s, "noise", [&](std::ostream& os) { write_noise_csv(os, n); }, rows);
}

std::vector<std::vector<double>> read_scenarios(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::vector<double> row;
        for (auto f : detail::split_fields(t)) {
            double v = 0.0;
            if (!detail::parse_real(f, v)) {
                throw InputError(path.string() + ":" + std::to_string(line_no) +
                                 ": unparseable return '" + std::string(f) + "'");
            }
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void cmd_compound(const Settings& s) {
    const bool reference = !s.has("returns");
    const std::size_t block = s.has("block") ? s.count("block") : reference ? kCompoundLadderRows : 0;
    const auto table = compound_table(reference ? reference_compound_scenarios()
                                                : read_scenarios(s.path("returns")),
                                      block);
    Json rows = Json::array();
    for (std::size_t r = 0; r < table.rows(); ++r) {
        rows.push_back({{"row", r + 1},
                        {"compounded", table.compounded[r]},
                        {"compounded_diff", table.compounded_diff[r]},
                        {"row_stddev", table.row_stddev[r]},
                        {"row_stddev_diff", table.row_stddev_diff[r]}});
    }
    write_report(s, "compound", [&](std::ostream& os) { write_compound_csv(os, table); }, rows);
}

void cmd_bias(const Settings& s) {
    const auto b = bias_series(load_levels(s, "index"), load_levels(s, "market"));
    Json rows = Json::array();
    for (std::size_t i = 0; i < b.size(); ++i) {
        Json r{{"date", b.dates[i].iso()}, {"index", b.index[i]}, {"market", b.market[i]},
               {"bias", b.bias[i]}};
        if (i > 0) r["increment"] = b.increments[i - 1];
        rows.push_back(std::move(r));
    }
    write_report(s, "bias", [&](std::ostream& os) { write_bias_csv(os, b); }, rows);
    if (b.comovement) std::cout << "comovement " << format_double(*b.comovement) << '\n';
}

// ---------------------------------------------------------------------------

Settings resolve(Leaf& leaf) {
    Settings s;
    s.command = leaf.name;
    s.values = leaf.defaults;
    const auto& cfg_path = leaf.given.count("config") && leaf.options["config"]->count()
                               ? leaf.given["config"]
                               : std::string();
    if (!cfg_path.empty()) {
        for (const auto& [k, v] : load_config(cfg_path)) {
            if (!s.values.count(k) || k == "config") {
                throw InputError(cfg_path + ": unknown key '" + k + "' for '" + leaf.name + "'");
            }
            s.values[k] = v;
        }
    }
    for (const auto& [k, opt] : leaf.options) {
        if (opt->count() > 0) s.values[k] = leaf.given[k];
    }
    std::optional<std::uint64_t> flag;
    if (!s.values["seed"].empty()) {
        const auto& v = s.values["seed"];
        std::uint64_t x = 0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
        if (ec != std::errc{} || ptr != v.data() + v.size()) {
            throw InputError("--seed: expected an unsigned integer, got '" + v + "'");
        }
        flag = x;
    }
    s.seed = resolve_seed(flag, std::getenv("RISKINDEXLAB_SEED"));
    s.values["seed"] = std::to_string(s.seed);
    s.out = s.values["out"];
    for (const auto& k : kUnrecorded) s.values.erase(k);
    std::error_code ec;
    fs::create_directories(s.out, ec);
    if (ec) throw InputError("cannot create output directory " + s.out.string() + ": " + ec.message());
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Risk-controlled index engines and diagnostics"};
    app.set_version_flag("--version", std::string(RISKINDEXLAB_VERSION));
    app.require_subcommand(1);
    auto* index = app.add_subcommand("index", "compute a risk-controlled index");
    index->require_subcommand(1);
    auto* diagnose = app.add_subcommand("diagnose", "run a diagnostic report");
    diagnose->require_subcommand(1);

    std::list<Leaf> leaves;
    auto add = [&](CLI::App* parent, const std::string& name, const std::string& full,
                   const std::string& help, ConfigMap keys, std::function<void(const Settings&)> run,
                   bool positional_input = false) {
        auto& leaf = leaves.emplace_back();
        leaf.name = full;
        leaf.app = parent->add_subcommand(name, help);
        leaf.defaults = with_common(std::move(keys));
        leaf.run = std::move(run);
        for (const auto& [k, v] : leaf.defaults) {
            const auto h = kHelp.count(k) ? kHelp.at(k) : k;
            const std::string names = positional_input && k == "input" ? "input,--input" : "--" + k;
            auto* opt = leaf.app->add_option(names, leaf.given[k], h);
            if (!v.empty()) opt->default_str(v);
            leaf.options[k] = opt;
        }
    };

    const ConfigMap leverage_keys{{"tv", "0.10"}, {"cap", "1.5"}, {"floor", "0"}, {"lag", "2"}};
    const ConfigMap control_keys{{"rebalance-every", "1"}, {"base", "100"}, {"day-count", "default"},
                                 {"input", ""},            {"rates", ""},   {"flat-rate", ""}};

    add(&app, "ingest", "ingest", "validate and normalize a level CSV",
        {{"input", ""}, {"date-col", "date"}, {"value-col", "level"}}, cmd_ingest, true);
    add(&app, "vol", "vol", "latest realized volatility of a level CSV",
        merged({{"input", ""}}, kVolKeys), cmd_vol, true);
    add(index, "hsrai", "index hsrai", "cap/floor risk-control index",
        merged(merged(leverage_keys, control_keys), kVolKeys), cmd_hsrai, true);
    add(index, "sprci", "index sprci", "cap-only risk-control index",
        merged(merged(merged(leverage_keys, control_keys), kVolKeys),
               {{"accrual", "simple-rate"}, {"ir2m", ""}, {"ir3m", ""}, {"roll-days", "30"}}),
        cmd_sprci, true);
    add(index, "djrri", "index djrri", "relative-risk stock/bond/cash index",
        {{"stocks", ""}, {"bonds", ""}, {"cash", ""}, {"risk-fraction", "1"}, {"lookback", "36"},
         {"grid", "1000"}, {"min-weight", "0.05"}, {"measure", "semivariance"}, {"base", "100"}},
        cmd_djrri);
    add(index, "stablerisk", "index stablerisk", "constant-volatility futures portfolio",
        {{"contracts", ""}, {"tv", "0.10"}, {"threshold", "0.25"}, {"cost", "0.0005"},
         {"cov-window", "60"}, {"rebalance-every", "1"}, {"cash-rate", "0"},
         {"cash-fraction", "0.8"}, {"base", "100"}, {"realized-window", "63"}, {"band", "0.20"},
         {"assets", "4"}, {"days", "504"}, {"switch-day", "252"}, {"vol-before", "0.15"},
         {"vol-after", "0.30"}, {"drift", "0"}, {"correlation", "0.3"}},
        cmd_stablerisk);
    add(diagnose, "table1", "diagnose table1", "leverage sensitivity table",
        {{"tv", "0.20"}, {"rv-min", "0.08"}, {"rv-max", "0.48"}, {"step", "0.01"}, {"cap", "none"},
         {"floor", "0"}},
        cmd_table1);
    add(diagnose, "leakage", "diagnose leakage", "realized index volatility against rebalance lag",
        merged(merged(leverage_keys, kVolKeys),
               {{"window", "20"}, {"lags", "1,3,5,10"}, {"flat-rate", "0"}, {"input", ""},
                {"days", "756"}, {"switch-day", "378"}, {"vol-before", "0.10"},
                {"vol-after", "0.40"}, {"drift", "0"}}),
        cmd_leakage);
    add(diagnose, "noise", "diagnose noise", "index change not explained by the market",
        {{"index", ""}, {"market", ""}, {"window", "21"}}, cmd_noise);
    add(diagnose, "compound", "diagnose compound", "compounded return and dispersion table",
        {{"returns", ""}, {"block", ""}}, cmd_compound);
    add(diagnose, "bias", "diagnose bias", "index minus market gap and its increments",
        {{"index", ""}, {"market", ""}}, cmd_bias);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        for (auto& leaf : leaves) {
            if (leaf.app->parsed()) leaf.run(resolve(leaf));
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
