// delta: density degree bounds, local certificates and fixtures from the
// command line.  Exit codes: 0 ok, 1 schema or input error, 2 needs-fact.
#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "densdeg/batch.hpp"
#include "densdeg/local.hpp"
#include "densdeg/rootnumber.hpp"
#include "densdeg/rules.hpp"
#include "fetch.hpp"

#ifndef DENSDEG_FIXTURE_DIR
#define DENSDEG_FIXTURE_DIR "fixtures"
#endif

using namespace densdeg;
using json = nlohmann::json;

namespace {

struct Output {
    bool pretty = false;
    void emit(const json& j) const { std::cout << (pretty ? j.dump(2) : j.dump()) << "\n"; }
};

json read_input(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        try {
            return json::parse(ss.str());
        } catch (json::parse_error& e) {
            throw SchemaError(std::string("stdin: ") + e.what());
        }
    }
    return load_json_file(path);
}

HyperellipticCurve read_model(const std::string& path) {
    CurveInput c = CurveInput::from_json(read_input(path));
    if (!c.model) throw SchemaError(path + ": curve has no model");
    return *c.model;
}

EllipticCurve read_elliptic(const std::string& path) {
    auto e = EllipticCurve::from_hyperelliptic(read_model(path));
    if (!e) throw SchemaError(path + ": not a Weierstrass model");
    return *e;
}

void print_trace(const BoundResult& r) {
    std::cout << "lower: " << r.lower.describe() << "\n";
    std::cout << "upper: " << r.upper.describe() << "\n";
    std::cout << "exact on [1," << r.window << "]: " << (r.exact ? "yes" : "no") << "\n";
    auto und = window_difference(r.upper, r.lower, r.window);
    if (!und.empty()) {
        std::cout << "undecided:";
        for (size_t i = 0; i < und.size() && i < 20; ++i) std::cout << " " << und[i];
        if (und.size() > 20) std::cout << " ... (" << und.size() << ")";
        std::cout << "\n";
    }
    if (!r.assumptions.empty()) {
        std::cout << "assuming:";
        for (auto& a : r.assumptions) std::cout << " " << a;
        std::cout << "\n";
    }
    for (auto& t : r.trace) {
        std::cout << "  [" << t.status << "] " << t.rule;
        if (t.contribution) std::cout << "  " << t.contribution->describe();
        std::cout << "\n      " << t.anchor << "\n";
        if (!t.note.empty()) std::cout << "      note: " << t.note << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"density degree sets of products of curves"};
    app.require_subcommand(1);
    Output out;
    bool human = false;
    uint64_t window = 200;
    app.add_flag("--pretty", out.pretty, "indented JSON");
    app.add_flag("--human", human, "readable trace instead of JSON (delta only)");
    app.add_option("--window", window, "window [1, B] for exactness checks")->check(CLI::Range(1, 100000));

    // delta
    auto* cmd_delta = app.add_subcommand("delta", "bounds for a curve, product, Jacobian, bielliptic or abelian surface");
    std::string kind, input_path, curves_path;
    std::vector<std::string> assume;
    bool lenient = false;
    cmd_delta->add_option("kind", kind, "curve | product | potential | jacobian | bielliptic | abelian")
        ->required()
        ->check(CLI::IsMember(request_kinds()));
    cmd_delta->add_option("input", input_path, "input JSON file, or - for stdin")->required();
    cmd_delta->add_option("--assume", assume, "enable a conditional rule family")
        ->check(CLI::IsMember(std::vector<std::string>(known_assumptions().begin(), known_assumptions().end())));
    cmd_delta->add_option("--curves", curves_path, "fixture file whose curves may be referenced by label");
    cmd_delta->add_flag("--lenient", lenient, "fall back to weaker bounds instead of reporting missing facts");

    // local
    auto* cmd_local = app.add_subcommand("local", "local solvability certificates");
    std::string local_curve, local_pair;
    uint64_t local_p = 3;
    int local_dmax = 2;
    cmd_local->add_option("curve", local_curve, "curve JSON")->required();
    cmd_local->add_option("--p", local_p, "prime")->check(CLI::PositiveNumber);
    cmd_local->add_option("--dmax", local_dmax, "largest degree")->check(CLI::Range(1, 12));
    cmd_local->add_option("--pair", local_pair, "second curve: quadratic obstruction for the pair");

    // parity-twist
    auto* cmd_twist = app.add_subcommand("parity-twist", "quadratic twist where both root numbers are -1");
    std::string e1_path, e2_path;
    long twist_bound = 10000;
    cmd_twist->add_option("--e1", e1_path)->required();
    cmd_twist->add_option("--e2", e2_path)->required();
    cmd_twist->add_option("--bound", twist_bound, "search bound for |d|");

    // certify
    auto* cmd_cert = app.add_subcommand("certify", "check a non-density certificate");
    std::string cert_kind, cert_input;
    cmd_cert->add_option("kind", cert_kind, "quadratic | cubic")->required()->check(CLI::IsMember({"quadratic", "cubic"}));
    cmd_cert->add_option("input", cert_input, "{\"C\":..., \"D\":..., \"asserted\":...}")->required();

    // verify-certificate
    auto* cmd_verify = app.add_subcommand("verify-certificate", "re-check a local certificate");
    std::string verify_path;
    bool recheck = false;
    cmd_verify->add_option("certificate", verify_path)->required();
    cmd_verify->add_flag("--recheck", recheck, "re-run the solver on the embedded models");

    // fetch
    auto* cmd_fetch = app.add_subcommand("fetch", "curve data by LMFDB label");
    std::string label;
    fetch::FetchOptions fopt;
    fopt.fixture_file = std::string(DENSDEG_FIXTURE_DIR) + "/worked_examples.json";
    cmd_fetch->add_option("label", label)->required();
    cmd_fetch->add_flag("--online", fopt.online, "allow network access");
    cmd_fetch->add_option("--cache-dir", fopt.cache_dir, "cache directory (default $DENSDEG_CACHE)");

    // selftest
    auto* cmd_self = app.add_subcommand("selftest", "run the fixture suite");
    std::string fixture_path = std::string(DENSDEG_FIXTURE_DIR) + "/worked_examples.json";
    cmd_self->add_option("--fixtures", fixture_path);

    // rules
    auto* cmd_rules = app.add_subcommand("rules", "rule roster as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_delta->parsed()) {
            EngineOptions opt;
            opt.window = window;
            opt.strict = !lenient;
            opt.assume.insert(assume.begin(), assume.end());
            json curves = curves_path.empty() ? json() : load_json_file(curves_path).at("curves");
            BoundResult r = evaluate_request(kind, read_input(input_path), opt, curves);
            if (human) print_trace(r);
            else out.emit(r.to_json());
        } else if (cmd_local->parsed()) {
            auto c = read_model(local_curve);
            if (!local_pair.empty()) {
                auto r = quadratic_obstruction(c, read_model(local_pair), local_p);
                out.emit(r.certificate);
            } else {
                out.emit(degree_divisibility(c, local_p, local_dmax).certificate);
            }
        } else if (cmd_twist->parsed()) {
            out.emit(find_parity_twist(read_elliptic(e1_path), read_elliptic(e2_path), twist_bound).to_json());
        } else if (cmd_cert->parsed()) {
            json in = read_input(cert_input);
            CurveInput C = CurveInput::from_json(in.at("C")), D = CurveInput::from_json(in.at("D"));
            if (!C.model || !D.model) throw SchemaError("certificates need models");
            auto rep = cert_kind == "quadratic" ? nondensity_quadratic_certificate(*C.model, *D.model, in.at("asserted"))
                                                : nondensity_cubic_certificate(*C.model, *D.model, in.at("asserted"));
            out.emit(rep.to_json());
            return rep.verified ? 0 : 3;
        } else if (cmd_verify->parsed()) {
            auto chk = verify_certificate(read_input(verify_path), recheck);
            json j = {{"ok", chk.ok}};
            if (!chk.reason.empty()) j["reason"] = chk.reason;
            out.emit(j);
            return chk.ok ? 0 : 3;
        } else if (cmd_fetch->parsed()) {
            std::string source;
            json c = fetch::fetch_curve(label, fopt, source);
            std::cerr << "source: " << source << "\n";
            out.emit(c);
        } else if (cmd_self->parsed()) {
            auto res = run_fixture_cases(load_json_file(fixture_path));
            int bad = 0;
            for (auto& o : res) {
                std::cout << (o.ok ? "PASS " : "FAIL ") << o.name;
                if (!o.ok) {
                    std::cout << ": " << o.detail;
                    ++bad;
                }
                std::cout << "\n";
            }
            std::cout << res.size() - bad << "/" << res.size() << " fixture cases pass\n";
            return bad ? 1 : 0;
        } else if (cmd_rules->parsed()) {
            out.emit(rule_roster_json());
        }
    } catch (NeedsFact& e) {
        out.emit({{"error", "needs-fact"}, {"rule", e.rule}, {"fact", e.fact}});
        return 2;
    } catch (std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
