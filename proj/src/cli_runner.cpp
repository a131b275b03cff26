#include "danlab/cli_runner.hpp"

#include <algorithm>
#include <sstream>

namespace danlab::cli {

const char* command_name(Command c) {
    switch (c) {
        case Command::verify_surface: return "verify-surface";
        case Command::mc_spread: return "mc-spread";
        case Command::threshold: return "threshold";
        case Command::split: return "split";
        case Command::map_tame: return "map-tame";
        case Command::spread_set: return "spread-set";
        case Command::toy: return "toy";
        case Command::randomize_projection: return "randomize-projection";
        case Command::prescribe: return "prescribe";
        case Command::interpolate: return "interpolate";
    }
    return "?";
}

Json config_echo(const RunConfig& cfg) {
    Json j;
    j["command"] = command_name(cfg.command);
    j["surface"] = cfg.surface_text;
    j["seed"] = cfg.seed;
    j["samples"] = cfg.samples;
    j["backend"] = cfg.backend == Backend::exact ? "exact" : "approx";
    j["r"] = cfg.r_values;
    j["nmax"] = cfg.nmax;
    j["zeta"] = cfg.zeta;
    j["eps"] = cfg.eps;
    j["f"] = cfg.toy_f;
    j["grid"] = cfg.grid;
    j["axis"] = cfg.axis;
    return j;
}

namespace {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json input_json_of(const RunConfig& cfg) {
    if (cfg.input_json.empty()) return Json();
    return Json::parse(cfg.input_json);
}

RunResult cmd_verify_surface(const RunConfig& cfg) {
    const auto p = Polynomial<ExactComplex>::parse(cfg.surface_text);
    Json out;
    out["config"] = config_echo(cfg);
    try {
        Surface<ExactComplex> s(p);
        out["squarefree"] = true;
        out["d"] = s.degree();
        out["rho"] = s.bounds().rho;
        out["alpha"] = s.bounds().alpha;
        out["beta"] = s.bounds().beta;
        out["M"] = s.bounds().M;
        return {0, dump(out)};
    } catch (const NotSquarefree&) {
        out["squarefree"] = false;
        out["d"] = p.degree();
        out["error"] = "NotSquarefree";
        return {2, dump(out)};
    }
}

RunResult cmd_mc_spread(const RunConfig& cfg) {
    if (cfg.backend != Backend::approx)
        throw UsageError("mc-spread runs on the approximate backend");
    if (cfg.samples < 1000) throw UsageError("mc-spread requires --samples >= 1000");
    const Surface<Complex> surf(Polynomial<Complex>::parse(cfg.surface_text));
    std::vector<SurfacePoint<Complex>> pts;
    const Json in = input_json_of(cfg);
    if (!in.is_null() && in.contains("points")) {
        for (auto& p : points_from_json<Complex>(in["points"])) pts.push_back(surf.point(p.x, p.y, p.z));
    } else {
        // default grid: |y| from cfg.grid, z = 0, x = P(0)/y
        for (double ymod : cfg.grid) {
            if (ymod == 0) throw UsageError("grid |y| values must be nonzero");
            const Complex y(ymod, 0);
            pts.push_back(surf.point(surf.poly().eval(Complex(0, 0)) / y, y, Complex(0, 0)));
        }
    }
    std::stable_sort(pts.begin(), pts.end(),
                     [](const SurfacePoint<Complex>& a, const SurfacePoint<Complex>& b) {
                         return exhaustion(a) < exhaustion(b);
                     });
    Rng rng(cfg.seed);
    std::ostringstream os;
    os << "# danlab mc-spread surface=" << cfg.surface_text << " seed=" << cfg.seed
       << " samples=" << cfg.samples << " backend=approx\n";
    os << "x,y,z,exhaustion,r,N,hits,estimate,stderr,bound\n";
    uint64_t tag = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        for (double r : cfg.r_values) {
            const SpreadReport rep =
                mc_hit_eta(surf, pts[i], r, cfg.samples, rng.substream(tag++));
            os << format_scalar(pts[i].x) << ',' << format_scalar(pts[i].y) << ','
               << format_scalar(pts[i].z) << ',' << format_double(exhaustion(pts[i])) << ','
               << format_double(r) << ',' << rep.samples << ',' << rep.hits << ','
               << format_double(rep.estimate) << ',' << format_double(rep.stderr_est) << ',';
            if (rep.bound) os << format_double(*rep.bound);
            os << '\n';
        }
    }
    return {0, os.str()};
}

RunResult cmd_threshold(const RunConfig& cfg) {
    const Surface<Complex> surf(Polynomial<Complex>::parse(cfg.surface_text));
    const double r_ball = cfg.r_values.empty() ? 1.0 : cfg.r_values[0];
    Rng rng(cfg.seed);
    const ThresholdSchedule sched = threshold_sequence(surf, cfg.nmax, r_ball, rng);
    Json out;
    out["config"] = config_echo(cfg);
    out["schedule"] = schedule_to_json(sched);
    return {0, dump(out)};
}

template <class S>
std::pair<DiscreteSet<S>, std::vector<double>> read_set_and_zeta(const Surface<S>& surf,
                                                                 const RunConfig& cfg,
                                                                 const Json& in) {
    if (in.is_null() || !in.contains("points"))
        throw UsageError("--in JSON with a \"points\" array is required");
    DiscreteSet<S> d = set_from_json(surf, in["points"]);
    std::vector<double> zeta(d.size(), cfg.zeta);
    if (in.contains("zeta")) {
        zeta = in["zeta"].get<std::vector<double>>();
        if (zeta.size() != d.size()) throw UsageError("zeta list must match the point count");
    }
    return {std::move(d), std::move(zeta)};
}

template <class S>
RunResult cmd_split_impl(const RunConfig& cfg) {
    const Surface<S> surf(Polynomial<S>::parse(cfg.surface_text));
    auto [d, zeta] = read_set_and_zeta(surf, cfg, input_json_of(cfg));
    Rng rng(cfg.seed);
    const SplitWitness<S> sw = split_into_tame(surf, d, zeta, rng);
    Json out;
    out["config"] = config_echo(cfg);
    out["d1"] = set_to_json(sw.d1);
    out["d2"] = set_to_json(sw.d2);
    out["witness1"] = witness_to_json(sw.w1);
    out["witness2"] = witness_to_json(sw.w2);
    return {0, dump(out)};
}

template <class S>
RunResult cmd_spread_set_impl(const RunConfig& cfg) {
    const Surface<S> surf(Polynomial<S>::parse(cfg.surface_text));
    auto [d, zeta] = read_set_and_zeta(surf, cfg, input_json_of(cfg));
    const TameWitness<S> w = spread_past(surf, d, zeta);
    Json out;
    out["config"] = config_echo(cfg);
    out["witness"] = witness_to_json(w);
    return {0, dump(out)};
}

template <class S>
RunResult cmd_map_tame_impl(const RunConfig& cfg) {
    const Surface<S> surf(Polynomial<S>::parse(cfg.surface_text));
    const Json in = input_json_of(cfg);
    if (in.is_null() || !in.contains("D") || !in.contains("Dt") || !in.contains("map"))
        throw UsageError("--in JSON with \"D\", \"Dt\" and \"map\" is required");
    const DiscreteSet<S> d = set_from_json(surf, in["D"]);
    const DiscreteSet<S> dt = set_from_json(surf, in["Dt"]);
    const std::vector<size_t> idx = in["map"].get<std::vector<size_t>>();
    Rng rng(cfg.seed);
    const MapReport<S> rep = map_tame_to_tame(surf, d, dt, idx, rng);
    Json out;
    out["config"] = config_echo(cfg);
    out["word"] = word_to_json(rep.word);
    out["residuals"] = rep.residuals;
    out["max_residual"] = rep.max_residual;
    return {0, dump(out)};
}

template <class S>
RunResult cmd_randomize_projection_impl(const RunConfig& cfg) {
    const Surface<S> surf(Polynomial<S>::parse(cfg.surface_text));
    const Json in = input_json_of(cfg);
    if (in.is_null() || !in.contains("points"))
        throw UsageError("--in JSON with a \"points\" array is required");
    const DiscreteSet<S> d = set_from_json(surf, in["points"]);
    const Axis axis = cfg.axis == "y" || cfg.axis == "Y" ? Axis::Y : Axis::X;
    Rng rng(cfg.seed);
    const auto rp = randomize_projection(surf, d, rng, 64, axis);
    std::vector<SurfacePoint<S>> moved;
    for (const auto& p : d.points()) moved.push_back(word_apply(surf, rp.word, p));
    const auto rep = projection_report(DiscreteSet<S>(surf, moved), axis);
    Json out;
    out["config"] = config_echo(cfg);
    out["t"] = format_scalar(rp.t);
    out["word"] = word_to_json(rp.word);
    Json repj;
    repj["axis"] = axis == Axis::X ? "x" : "y";
    repj["injective"] = rep.injective;
    repj["min_gap"] = rep.min_gap;
    repj["avoids_zero"] = rep.avoids_zero;
    repj["properness_margin"] = rep.properness_margin;
    out["report"] = std::move(repj);
    return {0, dump(out)};
}

template <class S>
RunResult cmd_prescribe_impl(const RunConfig& cfg) {
    const Surface<S> surf(Polynomial<S>::parse(cfg.surface_text));
    const Json in = input_json_of(cfg);
    if (in.is_null() || !in.contains("points") || !in.contains("targets"))
        throw UsageError("--in JSON with \"points\" and \"targets\" is required");
    const DiscreteSet<S> d = set_from_json(surf, in["points"]);
    std::vector<S> targets;
    for (const auto& t : in["targets"]) targets.push_back(parse_scalar<S>(t.get<std::string>()));
    const Word<S> w = prescribe_p2(surf, d, targets);
    Json out;
    out["config"] = config_echo(cfg);
    out["word"] = word_to_json(w);
    Json achieved = Json::array();
    for (const auto& p : d.points()) achieved.push_back(format_scalar(word_apply(surf, w, p).x));
    out["achieved_x"] = std::move(achieved);
    return {0, dump(out)};
}

template <class S>
RunResult cmd_interpolate_impl(const RunConfig& cfg) {
    const Json in = input_json_of(cfg);
    if (in.is_null() || !in.contains("nodes"))
        throw UsageError("--in JSON with a \"nodes\" array of [abscissa, value] pairs is required");
    std::vector<std::pair<S, S>> nodes;
    for (const auto& row : in["nodes"]) {
        if (!row.is_array() || row.size() != 2)
            throw UsageError("each node must be an [abscissa, value] pair");
        nodes.emplace_back(parse_scalar<S>(row[0].get<std::string>()),
                           parse_scalar<S>(row[1].get<std::string>()));
    }
    const Polynomial<S> g = interpolate(nodes);
    Json out;
    out["config"] = config_echo(cfg);
    out["coeffs"] = g.to_text();
    out["degree"] = g.degree();
    return {0, dump(out)};
}

Json toy_row_to_json(const ToyRow& row) {
    Json j;
    j["sphere_radius"] = row.sphere_radius;
    j["report"] = spread_report_to_json(row.report);
    return j;
}

RunResult cmd_toy(const RunConfig& cfg) {
    ToyFamily fam;
    if (cfg.toy_f == "exp-neg") {
        fam = ToyFamily::exp_neg();
    } else if (cfg.toy_f.rfind("poly:", 0) == 0) {
        fam = ToyFamily::poly(Polynomial<Complex>::parse(cfg.toy_f.substr(5)));
    } else {
        throw UsageError("--f must be \"poly:<coeffs>\" or \"exp-neg\"");
    }
    const double r = cfg.r_values.empty() ? 1.0 : cfg.r_values[0];
    Rng rng(cfg.seed);
    const ToyVerdict v = toy_spread_verdict(fam, r, cfg.eps, cfg.grid, cfg.samples, rng);
    Json out;
    out["config"] = config_echo(cfg);
    out["verdict"] = v.spreading_evidence ? "spreading-evidence" : "non-spreading-evidence";
    out["R"] = v.R_found ? Json(*v.R_found) : Json(nullptr);
    Json rows = Json::array();
    for (const auto& row : v.rows) rows.push_back(toy_row_to_json(row));
    out["rows"] = std::move(rows);
    out["witness"] = v.witness ? toy_row_to_json(*v.witness) : Json(nullptr);
    return {0, dump(out)};
}

}  // namespace

RunResult run_command(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::verify_surface: return cmd_verify_surface(cfg);
        case Command::mc_spread: return cmd_mc_spread(cfg);
        case Command::threshold: return cmd_threshold(cfg);
        case Command::split:
            return cfg.backend == Backend::exact ? cmd_split_impl<ExactComplex>(cfg)
                                                 : cmd_split_impl<Complex>(cfg);
        case Command::spread_set:
            return cfg.backend == Backend::exact ? cmd_spread_set_impl<ExactComplex>(cfg)
                                                 : cmd_spread_set_impl<Complex>(cfg);
        case Command::map_tame:
            return cfg.backend == Backend::exact ? cmd_map_tame_impl<ExactComplex>(cfg)
                                                 : cmd_map_tame_impl<Complex>(cfg);
        case Command::toy: return cmd_toy(cfg);
        case Command::randomize_projection:
            return cfg.backend == Backend::exact ? cmd_randomize_projection_impl<ExactComplex>(cfg)
                                                 : cmd_randomize_projection_impl<Complex>(cfg);
        case Command::prescribe:
            return cfg.backend == Backend::exact ? cmd_prescribe_impl<ExactComplex>(cfg)
                                                 : cmd_prescribe_impl<Complex>(cfg);
        case Command::interpolate:
            return cfg.backend == Backend::exact ? cmd_interpolate_impl<ExactComplex>(cfg)
                                                 : cmd_interpolate_impl<Complex>(cfg);
    }
    throw InternalError("unknown command");
}

}  // namespace danlab::cli
