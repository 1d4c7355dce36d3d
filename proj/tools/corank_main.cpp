// corank: liveness solving, certificate checking and synthesis for game, pts
// and tree models.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "corank/corank.hpp"

namespace {

using namespace corank;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open output file: " + path);
    out << content;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

// Default gamma schedule 1 - 2^-k for k = 1..20.
std::vector<Rat> default_schedule() {
    std::vector<Rat> out;
    for (unsigned k = 1; k <= 20; ++k)
        out.push_back(Rat(1) - Rat(BigInt{1}, BigInt{1} << k));
    return out;
}

std::vector<Rat> parse_schedule(const std::string& text) {
    std::vector<Rat> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        std::string item = text.substr(start, end - start);
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        while (!item.empty() && item.back() == ' ') item.pop_back();
        if (!item.empty()) out.push_back(Rat::from_string(item));
        if (end == text.size()) break;
        start = end + 1;
    }
    return out;
}

std::string render_values(const std::vector<std::pair<std::string, Rat>>& values,
                          const std::string& state_filter, const std::string& format,
                          const ReportMeta& meta) {
    if (format == "json") {
        nlohmann::ordered_json j;
        nlohmann::ordered_json m;
        for (const auto& [k, v] : meta) m[k] = v;
        j["meta"] = m;
        nlohmann::ordered_json vals;
        for (const auto& [s, v] : values)
            if (state_filter.empty() || s == state_filter) vals[s] = v.to_string();
        j["values"] = vals;
        return j.dump(2) + "\n";
    }
    std::string out;
    for (const auto& [k, v] : meta) out += "# " + k + ": " + v + "\n";
    for (const auto& [s, v] : values)
        if (state_filter.empty() || s == state_filter) out += s + " = " + v.to_string() + "\n";
    return out;
}

int cmd_solve(const std::string& model_path, const std::string& state_filter,
              std::uint64_t iter, bool iter_set, const std::string& format) {
    ModelDocument doc = parse_model(read_file(model_path));
    ReportMeta meta{{"command", "solve"}, {"model", model_path}};
    std::vector<std::pair<std::string, Rat>> values;
    switch (doc.kind) {
        case ModelKind::game: {
            const auto& c = doc.game();
            if (iter_set) {
                auto step = [&](const ValueTable<std::uint8_t>& f) { return game_sigma_step(c, f); };
                auto res = kleene_lfp(step, ValueTable<std::uint8_t>::constant(c.size(), 0),
                                      IterationConfig{iter});
                meta.emplace_back("iterations", std::to_string(res.iterations_used));
                meta.emplace_back("stabilized", res.stabilized ? "true" : "false");
                for (StateId x = 0; x < c.size(); ++x)
                    values.emplace_back(c.state_names[x], Rat(res.table[x] ? 1 : 0));
            } else {
                auto reach = game_lfp_reach(c);
                for (StateId x = 0; x < c.size(); ++x)
                    values.emplace_back(c.state_names[x], Rat(reach.count(x) ? 1 : 0));
            }
            break;
        }
        case ModelKind::pts: {
            const auto& c = doc.pts();
            if (iter_set) {
                meta.emplace_back("iterations", std::to_string(iter));
                ReachVector f = pts_reach_iter(c, iter);
                for (StateId x = 0; x < c.size(); ++x)
                    values.emplace_back(c.state_names[x], f[x]);
            } else {
                ReachVector f = pts_reach_exact(c);
                for (StateId x = 0; x < c.size(); ++x)
                    values.emplace_back(c.state_names[x], f[x]);
            }
            break;
        }
        case ModelKind::tree: {
            const auto& a = doc.tree();
            if (iter_set) {
                auto step = [&](const ValueTable<std::uint8_t>& f) { return tree_sigma_step(a, f); };
                auto res = kleene_lfp(step, ValueTable<std::uint8_t>::constant(a.size(), 0),
                                      IterationConfig{iter});
                meta.emplace_back("iterations", std::to_string(res.iterations_used));
                meta.emplace_back("stabilized", res.stabilized ? "true" : "false");
                for (StateId x = 0; x < a.size(); ++x)
                    values.emplace_back(a.state_names[x], Rat(res.table[x] ? 1 : 0));
            } else {
                auto reach = tree_lfp_reach(a);
                for (StateId x = 0; x < a.size(); ++x)
                    values.emplace_back(a.state_names[x], Rat(reach.count(x) ? 1 : 0));
            }
            break;
        }
    }
    if (!state_filter.empty()) {
        bool known = false;
        for (const auto& [s, v] : values) known = known || s == state_filter;
        if (!known) throw error("unknown state '" + state_filter + "'");
    }
    std::cout << render_values(values, state_filter, format, meta);
    return 0;
}

int cmd_check(const std::string& model_path, const std::string& cert_path,
              std::uint64_t horizon, bool horizon_set, const std::string& format) {
    ModelDocument doc = parse_model(read_file(model_path));
    CertificateDocument cdoc = parse_certificate(read_file(cert_path));
    ReportMeta meta{{"command", "check"},
                    {"model", model_path},
                    {"certificate", cert_path},
                    {"kind", cert_kind_name(cdoc.kind)}};
    Report rep;
    std::vector<std::pair<std::string, Rat>> reference;
    if (doc.kind == ModelKind::game) {
        if (cdoc.kind != CertKind::rank) throw error("game models take rank certificates");
        RankCertificate cert = bind_rank(cdoc, doc.game());
        meta.emplace_back("cap", cert.cap.to_string());
        rep = check_game_ranking(doc.game(), cert);
        auto reach = game_lfp_reach(doc.game());
        for (StateId x = 0; x < doc.game().size(); ++x)
            reference.emplace_back(doc.game().state_names[x], Rat(reach.count(x) ? 1 : 0));
    } else if (doc.kind == ModelKind::pts) {
        const auto& c = doc.pts();
        switch (cdoc.kind) {
            case CertKind::arank: {
                AdditiveCert cert = bind_arank(cdoc, c);
                meta.emplace_back("epsilon", cert.epsilon.to_string());
                rep = check_additive(c, cert);
                break;
            }
            case CertKind::mrank: {
                MultiplicativeCert cert = bind_mrank(cdoc, c);
                meta.emplace_back("alpha", cert.alpha.to_string());
                meta.emplace_back("delta", cert.delta.to_string());
                rep = check_multiplicative(c, cert);
                break;
            }
            case CertKind::drank: {
                DistCert cert = bind_drank(cdoc, c);
                if (horizon_set) cert.horizon = horizon;
                meta.emplace_back("horizon", std::to_string(cert.horizon));
                rep = check_distribution_ranking(c, cert);
                break;
            }
            case CertKind::ncrank: {
                NonCountingCert cert = bind_ncrank(cdoc, c);
                meta.emplace_back("gamma", cert.gamma.to_string());
                rep = check_noncounting(c, cert);
                break;
            }
            default: throw error("pts models take arank, mrank, drank or ncrank certificates");
        }
        ReachVector reach = pts_reach_exact(c);
        for (StateId x = 0; x < c.size(); ++x)
            reference.emplace_back(c.state_names[x], reach[x]);
    } else {
        if (cdoc.kind != CertKind::trank) throw error("tree models take trank certificates");
        TreeCert cert = bind_trank(cdoc, doc.tree());
        rep = check_tree_ranking(doc.tree(), cert);
        auto reach = tree_lfp_reach(doc.tree());
        for (StateId x = 0; x < doc.tree().size(); ++x)
            reference.emplace_back(doc.tree().state_names[x], Rat(reach.count(x) ? 1 : 0));
    }
    rep.reference = std::move(reference);
    std::cout << render_report(rep, format, meta);
    return rep.passed() ? 0 : 1;
}

int cmd_synthesize(const std::string& model_path, const std::string& kind,
                   const std::string& cap, const std::string& gamma, std::uint64_t horizon,
                   const std::string& out_path) {
    ModelDocument doc = parse_model(read_file(model_path));
    CertificateDocument cdoc;
    if (kind == "rank") {
        if (doc.kind != ModelKind::game) throw error("rank synthesis needs a game model");
        const auto& c = doc.game();
        OrdinalValue capv = cap == "omega" ? OrdinalValue::omega_v()
                                           : OrdinalValue::fin(Rat::from_string(cap).num().to_u64());
        RankCertificate cert = synthesize_game_rank(c, capv);
        cdoc.kind = CertKind::rank;
        cdoc.cap = capv;
        for (StateId x = 0; x < c.size(); ++x) cdoc.rank_values[c.state_names[x]] = cert.values[x];
    } else if (kind == "drank") {
        if (doc.kind != ModelKind::pts) throw error("drank synthesis needs a pts model");
        const auto& c = doc.pts();
        DistCert cert = synthesize_hitting_distribution(c, horizon);
        cdoc.kind = CertKind::drank;
        cdoc.horizon = horizon;
        for (StateId x = 0; x < c.size(); ++x) cdoc.tail_values[c.state_names[x]] = cert.values[x];
    } else if (kind == "ncrank") {
        if (doc.kind != ModelKind::pts) throw error("ncrank synthesis needs a pts model");
        const auto& c = doc.pts();
        Rat g = Rat::from_string(gamma);
        ReachVector v = solve_discounted(c, g);
        cdoc.kind = CertKind::ncrank;
        cdoc.gamma = g;
        for (StateId x = 0; x < c.size(); ++x) cdoc.rat_values[c.state_names[x]] = v[x];
    } else if (kind == "trank") {
        if (doc.kind != ModelKind::tree) throw error("trank synthesis needs a tree model");
        const auto& a = doc.tree();
        TreeCert cert = synthesize_tree_rank(a);
        cdoc.kind = CertKind::trank;
        cdoc.tree_arena = cert.arena;
        for (StateId x = 0; x < a.size(); ++x)
            cdoc.tree_values[a.state_names[x]] = cert.values[x];
    } else {
        throw error("unknown synthesis kind '" + kind + "'");
    }
    write_output(out_path, serialize_certificate(cdoc));
    return 0;
}

int cmd_strategy(const std::string& model_path, const std::string& cert_path,
                 const std::string& out_path) {
    ModelDocument doc = parse_model(read_file(model_path));
    if (doc.kind != ModelKind::game) throw error("strategy extraction needs a game model");
    const auto& c = doc.game();
    CertificateDocument cdoc = parse_certificate(read_file(cert_path));
    RankCertificate cert = bind_rank(cdoc, c);
    Strategy st = extract_strategy(c, cert);
    std::string out = "strategy game\n";
    for (const auto& [x, oi] : st.choice) {
        out += c.state_names[x] + " = " + std::to_string(oi) + "  # {";
        const auto& inner = c.options[x][oi];
        for (std::size_t i = 0; i < inner.size(); ++i)
            out += (i ? " " : "") + c.state_names[inner[i]];
        out += "}\n";
    }
    write_output(out_path, out);
    return 0;
}

int cmd_sweep(const std::string& model_path, const std::string& gammas,
              const std::string& out_path) {
    ModelDocument doc = parse_model(read_file(model_path));
    if (doc.kind != ModelKind::pts) throw error("sweep needs a pts model");
    const auto& c = doc.pts();
    std::vector<Rat> schedule = gammas.empty() ? default_schedule() : parse_schedule(gammas);
    SweepResult sweep = gamma_sweep(c, schedule);
    write_output(out_path, render_sweep_csv(c.state_names, sweep));
    return 0;
}

int cmd_simulate(const std::string& model_path, const std::string& state, std::uint64_t trials,
                 std::uint64_t max_steps, std::uint64_t seed, const std::string& format) {
    ModelDocument doc = parse_model(read_file(model_path));
    if (doc.kind != ModelKind::pts) throw error("simulate needs a pts model");
    const auto& c = doc.pts();
    StateId start = c.size();
    for (StateId x = 0; x < c.size(); ++x)
        if (c.state_names[x] == state) start = x;
    if (start == c.size()) throw error("unknown state '" + state + "'");
    auto res = testkit::monte_carlo_reach(c, start, trials, max_steps, seed);
    if (format == "json") {
        nlohmann::ordered_json j;
        j["meta"] = {{"command", "simulate"}, {"model", model_path}, {"state", state},
                     {"trials", std::to_string(trials)}, {"max_steps", std::to_string(max_steps)},
                     {"seed", std::to_string(seed)}};
        j["hits"] = res.hits;
        j["estimate"] = Rat(BigInt::from_u64(res.hits), BigInt::from_u64(res.trials)).to_string();
        j["estimate_decimal"] = fmt_double(res.estimate);
        j["std_error"] = fmt_double(res.std_error);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "# command: simulate\n# model: " << model_path << "\n# state: " << state
                  << "\n# trials: " << trials << "\n# max_steps: " << max_steps
                  << "\n# seed: " << seed << "\n";
        std::cout << "hits = " << res.hits << "\n";
        std::cout << "estimate = "
                  << Rat(BigInt::from_u64(res.hits), BigInt::from_u64(res.trials)).to_string()
                  << " (" << fmt_double(res.estimate) << ")\n";
        std::cout << "std_error = " << fmt_double(res.std_error) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"liveness certification toolkit"};
    app.require_subcommand(1);

    std::string model_path, cert_path, out_path, format = "text";
    std::string state_filter, kind, cap = "omega", gamma = "9/10", gammas;
    std::uint64_t iter = 0, horizon = 64, trials = 100000, max_steps = 200, seed = 0;

    auto* solve = app.add_subcommand("solve", "compute the lfp liveness semantics");
    solve->add_option("model", model_path)->required();
    solve->add_option("--state", state_filter, "restrict output to one state");
    auto* iter_opt = solve->add_option("--iter", iter, "bounded iteration count");
    solve->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* check = app.add_subcommand("check", "check a certificate against a model");
    check->add_option("model", model_path)->required();
    check->add_option("cert", cert_path)->required();
    auto* hor_opt = check->add_option("--horizon", horizon, "override drank check horizon");
    check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* synth = app.add_subcommand("synthesize", "synthesize an optimal certificate");
    synth->add_option("model", model_path)->required();
    synth->add_option("--kind", kind)->required()->check(
        CLI::IsMember({"rank", "drank", "ncrank", "trank"}));
    synth->add_option("--cap", cap, "rank cap: omega or a natural");
    synth->add_option("--gamma", gamma, "discount factor for ncrank");
    synth->add_option("--horizon", horizon, "truncation horizon for drank");
    synth->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* strat = app.add_subcommand("strategy", "extract a positional strategy");
    strat->add_option("model", model_path)->required();
    strat->add_option("cert", cert_path)->required();
    strat->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* sweep = app.add_subcommand("sweep", "discounted values along a gamma schedule");
    sweep->add_option("model", model_path)->required();
    sweep->add_option("--gammas", gammas, "comma-separated rationals (default 1-2^-k, k=1..20)");
    sweep->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo reachability estimate");
    sim->add_option("model", model_path)->required();
    sim->add_option("--state", state_filter)->required();
    sim->add_option("--trials", trials);
    sim->add_option("--max-steps", max_steps);
    sim->add_option("--seed", seed);
    sim->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (const char* env_seed = std::getenv("CORANK_SEED")) {
        try {
            seed = std::stoull(env_seed);
        } catch (...) {
            std::cerr << "error: CORANK_SEED must be a number\n";
            return 2;
        }
    }

    try {
        if (solve->parsed())
            return cmd_solve(model_path, state_filter, iter, iter_opt->count() > 0, format);
        if (check->parsed())
            return cmd_check(model_path, cert_path, horizon, hor_opt->count() > 0, format);
        if (synth->parsed()) return cmd_synthesize(model_path, kind, cap, gamma, horizon, out_path);
        if (strat->parsed()) return cmd_strategy(model_path, cert_path, out_path);
        if (sweep->parsed()) return cmd_sweep(model_path, gammas, out_path);
        if (sim->parsed())
            return cmd_simulate(model_path, state_filter, trials, max_steps, seed, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
