#include "relay_sinr/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "relay_sinr/errors.hpp"

namespace relay_sinr::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxGridPoints = 100000;

// Walks one JSON object, tracking which keys were consumed so that leftovers
// can be rejected.
class ObjectReader
{
  public:
    ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path))
    {
        if (!obj_.is_object())
            throw SchemaError(path_.empty() ? "/" : path_, "expected an object");
    }

    bool contains(const std::string& key) const { return obj_.contains(key); }

    const json& at(const std::string& key)
    {
        seen_.insert(key);
        return obj_.at(key);
    }

    std::string child(const std::string& key) const { return path_ + "/" + key; }

    double number(const std::string& key, double fallback)
    {
        if (!contains(key))
            return fallback;
        const json& v = at(key);
        if (!v.is_number())
            throw SchemaError(child(key), "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d))
            throw SchemaError(child(key), "must be finite");
        return d;
    }

    long long integer(const std::string& key, long long fallback)
    {
        if (!contains(key))
            return fallback;
        const json& v = at(key);
        if (!v.is_number_integer())
            throw SchemaError(child(key), "expected an integer");
        return v.get<long long>();
    }

    std::string string(const std::string& key, const std::string& fallback)
    {
        if (!contains(key))
            return fallback;
        const json& v = at(key);
        if (!v.is_string())
            throw SchemaError(child(key), "expected a string");
        return v.get<std::string>();
    }

    // Rejects unknown keys up front, before any cross-field checks.
    void allow(std::initializer_list<const char*> keys) const
    {
        for (const auto& item : obj_.items())
            if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return item.key() == k; }))
                throw SchemaError(child(item.key()), "unknown key");
    }

    void finish() const
    {
        for (const auto& item : obj_.items())
            if (!seen_.count(item.key()))
                throw SchemaError(child(item.key()), "unknown key");
    }

  private:
    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

template <class E>
E pick(const std::string& path, const std::string& value, std::initializer_list<std::pair<const char*, E>> options)
{
    std::string names;
    for (const auto& [name, e] : options) {
        if (value == name)
            return e;
        names += names.empty() ? "" : ", ";
        names += name;
    }
    throw SchemaError(path, "unknown value \"" + value + "\" (expected one of: " + names + ")");
}

Sweep read_sweep(const json& v, const std::string& path, bool integral)
{
    ObjectReader r(v, path);
    for (const char* key : {"start", "stop", "step"})
        if (!r.contains(key))
            throw SchemaError(r.child(key), "sweep requires start, stop and step");
    Sweep s;
    if (integral) {
        s.start = static_cast<double>(r.integer("start", 0));
        s.stop = static_cast<double>(r.integer("stop", 0));
        s.step = static_cast<double>(r.integer("step", 1));
    } else {
        s.start = r.number("start", 0);
        s.stop = r.number("stop", 0);
        s.step = r.number("step", 1);
    }
    r.finish();
    if (!(s.step > 0.0))
        throw SchemaError(path + "/step", "must be > 0");
    if (s.stop < s.start)
        throw SchemaError(path + "/stop", "must be >= start");
    if ((s.stop - s.start) / s.step + 1.0 > static_cast<double>(kMaxGridPoints))
        throw SchemaError(path, "sweep has more than " + std::to_string(kMaxGridPoints) + " points");
    return s;
}

std::string metric_name(Metric m)
{
    switch (m) {
    case Metric::Outage: return "outage";
    case Metric::Cdf: return "cdf";
    case Metric::Pdf: return "pdf";
    }
    return "";
}

const char* axis_key(Axis a)
{
    switch (a) {
    case Axis::TotalSnrDb: return "total_snr_db";
    case Axis::InterfererPowerDb: return "inr_db";
    case Axis::Interferers: return "l1";
    case Axis::SinrDb: return "sinr_db";
    case Axis::Sinr: return "sinr";
    }
    return "";
}

json sweep_json(const Sweep& s, bool integral)
{
    if (integral)
        return {{"start", std::llround(s.start)}, {"stop", std::llround(s.stop)}, {"step", std::llround(s.step)}};
    return {{"start", s.start}, {"stop", s.stop}, {"step", s.step}};
}

// Checks that every grid point maps onto a valid physical configuration.
void dry_run(const Scenario& s)
{
    const std::vector<double> grid = s.sweep.values();
    for (double x : grid) {
        PointSetup p;
        try {
            p = setup_point(s, x);
            derive_hop_params(p.config);
            p.relay.validate();
            p.dest.validate();
        } catch (const std::exception& e) {
            throw SchemaError("/", std::string("invalid configuration at x = ") + std::to_string(x) + ": " + e.what());
        }
        if (s.nakagami) {
            for (const auto* pop : {&p.relay, &p.dest})
                if (!pop->empty() && std::any_of(pop->mean_inrs.begin(), pop->mean_inrs.end(),
                                                 [&](double v) { return v != pop->mean_inrs.front(); }))
                    throw SchemaError("/inr_db", "Nakagami interferers must share one INR per node");
        }
        if (s.has(Producer::Quadrature)) {
            if (p.relay.empty() || (s.model == SystemModel::SM2 && p.dest.empty()))
                throw SchemaError("/producers",
                                  "quad needs interferers at the relay (and at the destination for sm2) at every point");
        }
    }
}

int line_of(const std::string& text, const std::string& pointer)
{
    // Use the innermost non-index token of the pointer.
    std::string token;
    std::size_t pos = pointer.size();
    while (pos > 0) {
        const std::size_t slash = pointer.rfind('/', pos - 1);
        if (slash == std::string::npos)
            break;
        std::string t = pointer.substr(slash + 1, pos - slash - 1);
        if (!t.empty() && !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); })) {
            token = t;
            break;
        }
        pos = slash;
    }
    if (token.empty())
        return 0;
    const std::size_t at = text.find("\"" + token + "\"");
    if (at == std::string::npos)
        return 0;
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(at), '\n'));
}

}  // namespace

SchemaError::SchemaError(std::string pointer, const std::string& message, int line)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + pointer + ": " + message),
      pointer_(std::move(pointer)), line_(line)
{
}

std::vector<double> Sweep::values() const
{
    std::vector<double> out;
    const double span = (stop - start) / step;
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Snap to 12 significant digits so that 0.1-type steps print cleanly.
        double v = start + static_cast<double>(i) * step;
        if (v != 0.0) {
            const double scale = std::pow(10.0, 11 - std::floor(std::log10(std::abs(v))));
            v = std::round(v * scale) / scale;
        }
        out.push_back(v);
    }
    return out;
}

bool Scenario::has(Producer p) const { return std::find(producers.begin(), producers.end(), p) != producers.end(); }

std::string axis_unit(Axis axis)
{
    switch (axis) {
    case Axis::TotalSnrDb: return "dB_total_snr";
    case Axis::InterfererPowerDb: return "dB_interferer_power";
    case Axis::Interferers: return "interferers";
    case Axis::SinrDb: return "dB_sinr";
    case Axis::Sinr: return "linear_sinr";
    }
    return "";
}

std::string producer_name(Producer p)
{
    switch (p) {
    case Producer::Analytic: return "analytic";
    case Producer::MonteCarlo: return "mc";
    case Producer::Quadrature: return "quad";
    }
    return "";
}

Scenario parse_scenario(const json& doc)
{
    ObjectReader r(doc, "");
    r.allow({"name", "model", "fading", "metric", "grid_note", "total_snr_db", "inr_db", "l1", "l2", "sinr_db", "sinr",
             "m1", "m2", "zeta", "noise", "threshold", "series", "mc", "producers", "op_floor"});
    Scenario s;
    s.name = r.string("name", "");
    s.model = pick<SystemModel>("/model", r.string("model", "sm2"), {{"sm1", SystemModel::SM1}, {"sm2", SystemModel::SM2}});
    s.nakagami = pick<bool>("/fading", r.string("fading", "rayleigh"), {{"rayleigh", false}, {"nakagami", true}});
    s.metric = pick<Metric>("/metric", r.string("metric", "outage"),
                            {{"outage", Metric::Outage}, {"cdf", Metric::Cdf}, {"pdf", Metric::Pdf}});
    s.grid_note = r.string("grid_note", "");

    // Locate the swept quantity.
    std::vector<Axis> swept;
    for (Axis a : {Axis::TotalSnrDb, Axis::InterfererPowerDb, Axis::Interferers, Axis::SinrDb, Axis::Sinr})
        if (r.contains(axis_key(a)) && doc.at(axis_key(a)).is_object())
            swept.push_back(a);
    if (swept.size() != 1)
        throw SchemaError("/", "exactly one of total_snr_db, inr_db, l1, sinr_db, sinr must be a {start, stop, step} sweep");
    s.axis = swept.front();
    const bool sinr_axis = s.axis == Axis::SinrDb || s.axis == Axis::Sinr;
    if (s.metric == Metric::Outage && sinr_axis)
        throw SchemaError(std::string("/") + axis_key(s.axis), "outage curves sweep total_snr_db, inr_db or l1");
    if (s.metric == Metric::Cdf && s.axis != Axis::SinrDb)
        throw SchemaError("/metric", "cdf curves sweep sinr_db");
    if (s.metric == Metric::Pdf && s.axis != Axis::Sinr)
        throw SchemaError("/metric", "pdf curves sweep sinr (linear)");
    s.sweep = read_sweep(r.at(axis_key(s.axis)), std::string("/") + axis_key(s.axis), s.axis == Axis::Interferers);
    if (s.axis == Axis::Sinr && !(s.sweep.start > 0.0))
        throw SchemaError("/sinr/start", "must be > 0");
    if (s.axis == Axis::Interferers && s.sweep.start < 0.0)
        throw SchemaError("/l1/start", "must be >= 0");

    if (s.axis != Axis::TotalSnrDb)
        s.total_snr_db = r.number("total_snr_db", s.total_snr_db);

    if (s.axis != Axis::InterfererPowerDb && r.contains("inr_db")) {
        const json& v = r.at("inr_db");
        if (v.is_number()) {
            s.inr_db = {v.get<double>()};
        } else if (v.is_array() && !v.empty()) {
            s.inr_db.clear();
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (!v[i].is_number())
                    throw SchemaError("/inr_db/" + std::to_string(i), "expected a number");
                s.inr_db.push_back(v[i].get<double>());
            }
        } else {
            throw SchemaError("/inr_db", "expected a number, a nonempty list or a sweep");
        }
    }

    if (s.axis != Axis::Interferers) {
        const long long l1 = r.integer("l1", 4);
        if (l1 < 0 || l1 > 1000000)
            throw SchemaError("/l1", "must lie in [0, 1000000]");
        s.l1 = static_cast<int>(l1);
    }
    if (s.model == SystemModel::SM1) {
        s.l2 = static_cast<int>(r.integer("l2", 0));
        if (s.l2 != 0)
            throw SchemaError("/l2", "system model sm1 has no destination interferers");
        s.l2_tied = false;
    } else if (r.contains("l2") && r.at("l2").is_string()) {
        if (doc.at("l2").get<std::string>() != "l1")
            throw SchemaError("/l2", "expected an integer or \"l1\"");
        s.l2_tied = true;
    } else {
        s.l2_tied = !r.contains("l2");
        const long long l2 = r.integer("l2", 4);
        if (l2 < 0 || l2 > 1000000)
            throw SchemaError("/l2", "must lie in [0, 1000000]");
        s.l2 = static_cast<int>(l2);
    }
    if (s.l2_tied)
        s.l2 = s.l1;

    if (s.inr_db.size() > 1) {
        if (s.axis == Axis::Interferers)
            throw SchemaError("/inr_db", "a per-interferer list cannot be combined with an l1 sweep");
        if (s.inr_db.size() != static_cast<std::size_t>(s.l1 + s.l2))
            throw SchemaError("/inr_db", "per-interferer list needs l1 + l2 = " + std::to_string(s.l1 + s.l2) + " entries");
    }

    s.m1 = r.number("m1", 1.0);
    s.m2 = r.number("m2", 1.0);
    if (!(s.m1 >= 0.5) || !(s.m2 >= 0.5))
        throw SchemaError(!(s.m1 >= 0.5) ? "/m1" : "/m2", "Nakagami shape must be >= 0.5");
    if (!s.nakagami && (s.m1 != 1.0 || s.m2 != 1.0))
        throw SchemaError("/fading", "m1/m2 require fading \"nakagami\"");

    s.zeta = r.number("zeta", 0.5);
    if (!(s.zeta > 0.0 && s.zeta < 1.0))
        throw SchemaError("/zeta", "must lie in (0, 1)");
    s.noise = r.number("noise", 1.0);
    if (!(s.noise > 0.0))
        throw SchemaError("/noise", "must be > 0");

    if (r.contains("threshold")) {
        ObjectReader t(r.at("threshold"), "/threshold");
        s.threshold.rho = t.number("rho", 1.0);
        s.threshold.hops = static_cast<int>(t.integer("M", 2));
        s.threshold.rate = t.number("R", 1.0);
        t.finish();
        try {
            outage_threshold(s.threshold);
        } catch (const ConfigError& e) {
            throw SchemaError("/threshold", e.what());
        }
    }

    if (r.contains("series")) {
        ObjectReader t(r.at("series"), "/series");
        const long long k = t.integer("k_max", 100);
        if (k < 1 || k > 100000)
            throw SchemaError("/series/k_max", "must lie in [1, 100000]");
        s.series.k_max = static_cast<int>(k);
        s.series.rel_tol = t.number("rel_tol", 1e-12);
        if (!(s.series.rel_tol > 0.0 && s.series.rel_tol <= 1e-3))
            throw SchemaError("/series/rel_tol", "must lie in (0, 1e-3]");
        s.series.mode = pick<SeriesControl::Mode>(
            "/series/mode", t.string("mode", "fixed"),
            {{"fixed", SeriesControl::Mode::FixedK}, {"adaptive", SeriesControl::Mode::Adaptive}});
        t.finish();
    }

    if (r.contains("mc")) {
        ObjectReader t(r.at("mc"), "/mc");
        const long long n = t.integer("samples", 1000000);
        if (n < 1 || n > 1000000000LL)
            throw SchemaError("/mc/samples", "must lie in [1, 1e9]");
        s.mc_samples = static_cast<std::size_t>(n);
        if (t.contains("seed")) {
            const json& v = t.at("seed");
            if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
                throw SchemaError("/mc/seed", "expected a nonnegative integer");
            s.seed = v.get<std::uint64_t>();
        }
        s.gain = pick<GainModel>("/mc/gain", t.string("gain", "hypothetical"),
                                 {{"hypothetical", GainModel::Hypothetical}, {"csi", GainModel::CsiAssisted}});
        t.finish();
    }

    if (r.contains("producers")) {
        const json& v = r.at("producers");
        if (!v.is_array() || v.empty())
            throw SchemaError("/producers", "expected a nonempty list");
        s.producers.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::string path = "/producers/" + std::to_string(i);
            if (!v[i].is_string())
                throw SchemaError(path, "expected a string");
            const Producer p = pick<Producer>(path, v[i].get<std::string>(),
                                              {{"analytic", Producer::Analytic},
                                               {"mc", Producer::MonteCarlo},
                                               {"quad", Producer::Quadrature}});
            if (s.has(p))
                throw SchemaError(path, "duplicate producer");
            s.producers.push_back(p);
        }
    }
    if (s.has(Producer::Quadrature) && (s.nakagami || s.metric == Metric::Pdf))
        throw SchemaError("/producers", "quad supports Rayleigh interferers and the outage/cdf metrics only");

    if (r.contains("op_floor")) {
        const double f = r.number("op_floor", 0.0);
        if (!(f > 0.0 && f < 1.0))
            throw SchemaError("/op_floor", "must lie in (0, 1)");
        if (s.metric == Metric::Pdf || !s.has(Producer::Analytic))
            throw SchemaError("/op_floor", "needs a probability metric and the analytic producer");
        s.op_floor = f;
    }

    r.finish();
    dry_run(s);
    return s;
}

json to_json(const Scenario& s)
{
    json j;
    j["name"] = s.name;
    j["model"] = s.model == SystemModel::SM1 ? "sm1" : "sm2";
    j["fading"] = s.nakagami ? "nakagami" : "rayleigh";
    j["metric"] = metric_name(s.metric);
    if (s.axis != Axis::TotalSnrDb)
        j["total_snr_db"] = s.total_snr_db;
    if (s.axis != Axis::InterfererPowerDb) {
        if (s.inr_db.size() == 1)
            j["inr_db"] = s.inr_db.front();
        else
            j["inr_db"] = s.inr_db;
    }
    if (s.axis != Axis::Interferers)
        j["l1"] = s.l1;
    if (s.l2_tied)
        j["l2"] = "l1";
    else
        j["l2"] = s.l2;
    j[axis_key(s.axis)] = sweep_json(s.sweep, s.axis == Axis::Interferers);
    if (s.nakagami) {
        j["m1"] = s.m1;
        j["m2"] = s.m2;
    }
    j["zeta"] = s.zeta;
    j["noise"] = s.noise;
    j["threshold"] = {{"rho", s.threshold.rho}, {"M", s.threshold.hops}, {"R", s.threshold.rate}};
    j["series"] = {{"k_max", s.series.k_max},
                   {"rel_tol", s.series.rel_tol},
                   {"mode", s.series.mode == SeriesControl::Mode::FixedK ? "fixed" : "adaptive"}};
    j["mc"] = {{"samples", s.mc_samples},
               {"seed", s.seed},
               {"gain", s.gain == GainModel::Hypothetical ? "hypothetical" : "csi"}};
    json producers = json::array();
    for (Producer p : s.producers)
        producers.push_back(producer_name(p));
    j["producers"] = producers;
    if (s.op_floor)
        j["op_floor"] = *s.op_floor;
    if (!s.grid_note.empty())
        j["grid_note"] = s.grid_note;
    return j;
}

Scenario load_scenario_text(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto upto = std::min<std::size_t>(e.byte, text.size());
        const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
        throw SchemaError("/", std::string("malformed JSON: ") + e.what(), line);
    }
    try {
        if (doc.is_object() && doc.contains("manifest_version")) {
            if (!doc.contains("scenario"))
                throw SchemaError("/scenario", "manifest has no embedded scenario");
            return parse_scenario(doc.at("scenario"));
        }
        return parse_scenario(doc);
    } catch (const SchemaError& e) {
        if (e.line() > 0)
            throw;
        // Strip the pointer prefix our constructor added and rebuild with a line.
        std::string msg = e.what();
        const std::string prefix = e.pointer() + ": ";
        if (msg.rfind(prefix, 0) == 0)
            msg = msg.substr(prefix.size());
        throw SchemaError(e.pointer(), msg, line_of(text, e.pointer()));
    }
}

Scenario load_scenario_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw SchemaError("/", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario_text(buf.str());
}

PointSetup setup_point(const Scenario& s, double x)
{
    PointSetup p;
    const double tot_db = s.axis == Axis::TotalSnrDb ? x : s.total_snr_db;
    const int l1 = s.axis == Axis::Interferers ? static_cast<int>(std::lround(x)) : s.l1;
    const int l2 = s.model == SystemModel::SM1 ? 0 : (s.l2_tied ? l1 : s.l2);

    p.config.total_power = db_to_linear(tot_db);
    p.config.power_share = s.zeta;
    p.config.noise_relay = s.noise;
    p.config.noise_dest = s.noise;
    p.config.model = s.model;

    auto inr_at = [&](int idx) {
        if (s.axis == Axis::InterfererPowerDb)
            return x;
        return s.inr_db.size() == 1 ? s.inr_db.front() : s.inr_db.at(static_cast<std::size_t>(idx));
    };
    for (int i = 0; i < l1; ++i)
        p.relay.mean_inrs.push_back(db_to_linear(inr_at(i)) / s.noise);
    for (int i = 0; i < l2; ++i)
        p.dest.mean_inrs.push_back(db_to_linear(inr_at(l1 + i)) / s.noise);
    if (s.nakagami) {
        p.relay.fading = Nakagami{s.m1};
        p.dest.fading = Nakagami{s.m2};
    }

    switch (s.metric) {
    case Metric::Outage: p.gamma = outage_threshold(s.threshold); break;
    case Metric::Cdf: p.gamma = db_to_linear(x); break;
    case Metric::Pdf: p.gamma = x; break;
    }
    return p;
}

}  // namespace relay_sinr::cli
