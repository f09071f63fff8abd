#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "optf/checkers.hpp"
#include "optf/circuit.hpp"
#include "optf/cone.hpp"
#include "optf/purification.hpp"
#include "optf/report.hpp"
#include "optf/theory.hpp"

using namespace optf;

namespace {

std::uint64_t default_seed() {
    const char *e = std::getenv("OPT_FOUNDRY_SEED");
    if (!e || !*e) return 1;
    return std::strtoull(e, nullptr, 10);
}

std::vector<int> parse_levels(const std::string &text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        size_t used = 0;
        int v = std::stoi(part, &used);
        if (used != part.size() || v < 1) throw CLI::ValidationError("--levels", "expected positive integers, got '" + part + "'");
        out.push_back(v);
    }
    if (out.empty()) throw CLI::ValidationError("--levels", "at least one level required");
    return out;
}

std::pair<int, int> parse_range(const std::string &text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            int v = std::stoi(text);
            return {v, v};
        }
        int lo = std::stoi(text.substr(0, dots));
        int hi = std::stoi(text.substr(dots + 2));
        return {lo, hi};
    } catch (const std::exception &) {
        throw CLI::ValidationError("--n", "expected N or LO..HI, got '" + text + "'");
    }
}

BackendKind parse_backend(const std::string &name) {
    auto k = backend_from_name(name);
    if (!k) throw CLI::ValidationError("--backend", "expected classical|real|complex, got '" + name + "'");
    return *k;
}

void write_output(const std::string &text, const std::string &out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw CLI::ValidationError("--out", "cannot open '" + out_path + "'");
    os << text;
}

void emit(const CheckReport &r, const std::string &format, const std::string &out_path) {
    write_output(format == "md" ? emit_report_markdown(r) : emit_report_json(r), out_path);
}

void emit_many(const std::vector<CheckReport> &rs, const std::string &format, const std::string &out_path) {
    if (format == "md") {
        std::string text;
        for (const auto &r : rs) text += emit_report_markdown(r) + "\n";
        write_output(text, out_path);
    } else {
        write_output(emit_report_json(rs), out_path);
    }
}

double coord_gap(const Element &a, const Element &b) {
    double m = 0;
    for (size_t i = 0; i < a.coords.size(); ++i) m = std::max(m, std::abs(a.coords[i] - b.coords[i]));
    return m;
}

CheckReport purify_demo(BackendKind kind, const std::vector<int> &levels, int samples, std::uint64_t seed,
                        double tol) {
    CheckReport r;
    r.check = "purify";
    r.backend = backend_name(kind);
    r.levels = levels;
    r.samples = samples;
    r.seed = seed;
    r.pass = true;
    r.tolerances["marginal"] = tol;
    Rng rng(seed);
    for (int level : levels) {
        for (int s = 0; s < samples; ++s) {
            Element rho = random_density(kind, level, rng);
            PurificationPair pair = purify(kind, rho);
            Element first = marginal(pair.psi, level, level, 0);
            if (s == 0) r.witnesses.push_back({"purification(" + std::to_string(level) + ")",
                                               pair.psi.alg->describe(), pair.psi.coords});
            if (coord_gap(first, rho) > tol) {
                r.pass = false;
                r.witnesses.push_back({"marginal_mismatch(" + std::to_string(level) + ")", rho.alg->describe(),
                                       rho.coords});
            }
        }
    }
    return r;
}

CheckReport steer_demo(BackendKind kind, const std::vector<int> &levels, int samples, std::uint64_t seed,
                       double tol) {
    CheckReport r;
    r.check = "steer";
    r.backend = backend_name(kind);
    r.levels = levels;
    r.samples = samples;
    r.seed = seed;
    r.pass = true;
    r.tolerances["reconstruction"] = tol;
    Rng rng(seed);
    for (int level : levels) {
        for (int s = 0; s < samples; ++s) {
            // a random 3-piece ensemble and the state it averages to
            std::vector<Element> sigmas;
            for (int k = 0; k < 3; ++k)
                sigmas.push_back((0.2 + rng.unif()) * random_density(kind, level, rng));
            Element rho = sigmas[0] + sigmas[1] + sigmas[2];
            double tr = apply_effect(deterministic_effect(rho.alg), rho);
            rho = (1.0 / tr) * rho;
            for (auto &sig : sigmas) sig = (1.0 / tr) * sig;

            PurificationPair pair = purify(kind, rho);
            SteeringResult sr = steering_measurement(pair, sigmas);
            if (s == 0 && !sr.effects.empty())
                r.witnesses.push_back({"steering_effect(" + std::to_string(level) + ")",
                                       sr.effects[0].alg->describe(), sr.effects[0].coords});
            std::vector<EffectFunctional> parts;
            for (const auto &e : sr.effects) parts.push_back(EffectFunctional{e});
            if (!is_measurement(kind, level, parts, 1e-8)) {
                r.pass = false;
                r.witnesses.push_back({"effects_not_a_measurement(" + std::to_string(level) + ")",
                                       rho.alg->describe(), rho.coords});
            }
            for (size_t k = 0; k < sigmas.size(); ++k) {
                if (coord_gap(sr.ensemble[k], sigmas[k]) > tol) {
                    r.pass = false;
                    r.witnesses.push_back({"steering_mismatch(" + std::to_string(level) + ")",
                                           sigmas[k].alg->describe(), sigmas[k].coords});
                }
            }
        }
    }
    return r;
}

CircuitEnv load_bindings(const std::string &path, BackendKind kind) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw CLI::ValidationError("--bindings", "cannot open '" + path + "'");
    nlohmann::json j = nlohmann::json::parse(is);

    CircuitEnv env;
    env.kind = kind;
    if (j.contains("systems"))
        for (const auto &[name, level] : j.at("systems").items()) env.systems[name] = level.get<int>();

    auto wire_dims = [&](const std::vector<std::string> &systems) {
        std::vector<AlgebraPtr> algs;
        for (const auto &s : systems) {
            auto it = env.systems.find(s);
            if (it == env.systems.end())
                throw CLI::ValidationError("--bindings", "primitive references undeclared system '" + s + "'");
            algs.push_back(system_algebra(kind, it->second));
        }
        return algs;
    };
    auto kron_gram = [&](const std::vector<AlgebraPtr> &algs) {
        std::vector<double> g = {1.0};
        for (const auto &a : algs) {
            std::vector<double> next(g.size() * a->dim());
            const auto &ga = a->gram_diag();
            for (size_t i = 0; i < g.size(); ++i)
                for (int k = 0; k < a->dim(); ++k) next[i * a->dim() + k] = g[i] * ga[k];
            g = std::move(next);
        }
        return g;
    };

    if (!j.contains("primitives")) return env;
    for (const auto &[name, spec] : j.at("primitives").items()) {
        std::string what = spec.at("kind").get<std::string>();
        if (what == "state" || what == "effect") {
            auto systems = spec.at("systems").get<std::vector<std::string>>();
            auto coords = spec.at("coords").get<std::vector<double>>();
            auto algs = wire_dims(systems);
            int dim = 1;
            for (const auto &a : algs) dim *= a->dim();
            if ((int)coords.size() != dim)
                throw CLI::ValidationError("--bindings", "'" + name + "' needs " + std::to_string(dim) + " coords");
            if (what == "state") {
                Mat m(dim, 1);
                for (int i = 0; i < dim; ++i) m(i, 0) = coords[i];
                env.prims[name] = PrimitiveBinding{{}, systems, std::move(m)};
            } else {
                auto g = kron_gram(algs);
                Mat m(1, dim);
                for (int i = 0; i < dim; ++i) m(0, i) = coords[i] * g[i];
                env.prims[name] = PrimitiveBinding{systems, {}, std::move(m)};
            }
        } else if (what == "channel") {
            auto in = spec.at("in").get<std::vector<std::string>>();
            auto out = spec.at("out").get<std::vector<std::string>>();
            auto rows = spec.at("matrix").get<std::vector<std::vector<double>>>();
            auto in_algs = wire_dims(in), out_algs = wire_dims(out);
            int din = 1, dout = 1;
            for (const auto &a : in_algs) din *= a->dim();
            for (const auto &a : out_algs) dout *= a->dim();
            if ((int)rows.size() != dout)
                throw CLI::ValidationError("--bindings", "'" + name + "' matrix needs " + std::to_string(dout) + " rows");
            Mat m(dout, din);
            for (int i = 0; i < dout; ++i) {
                if ((int)rows[i].size() != din)
                    throw CLI::ValidationError("--bindings", "'" + name + "' matrix needs " + std::to_string(din) + " columns");
                for (int jx = 0; jx < din; ++jx) m(i, jx) = rows[i][jx];
            }
            env.prims[name] = PrimitiveBinding{in, out, std::move(m)};
        } else {
            throw CLI::ValidationError("--bindings", "'" + name + "' has unknown kind '" + what + "'");
        }
    }
    return env;
}

std::string format_scalar(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string join_wires(const std::vector<std::string> &v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s + "]";
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"verification toolkit for finite-dimensional operational probabilistic models"};
    app.require_subcommand(1);

    std::string backend = "complex", levels_text = "2,3", format = "json", out_path;
    std::string range_text = "2..6";
    int samples = 50;
    std::uint64_t seed = default_seed();
    double tol = 1e-8;
    bool timing = false;

    auto add_common = [&](CLI::App *cmd, bool with_backend = true) {
        if (with_backend) cmd->add_option("--backend", backend, "classical|real|complex");
        cmd->add_option("--levels", levels_text, "comma-separated levels, e.g. 2,3");
        cmd->add_option("--samples", samples, "randomized samples per check");
        cmd->add_option("--seed", seed, "RNG seed (default: OPT_FOUNDRY_SEED or 1)");
        cmd->add_option("--tol", tol, "tolerance override for demo comparisons");
        cmd->add_option("--format", format, "json|md")->check(CLI::IsMember({"json", "md"}));
        cmd->add_option("--out", out_path, "write the report here instead of stdout");
        cmd->add_flag("--timing", timing, "record wall time in runtime_ms");
    };

    CLI::App *post = app.add_subcommand("check-postulates", "verdict table for both postulates on all backends");
    add_common(post, false);

    CLI::App *classify = app.add_subcommand("classify", "classification-by-exclusion sweep");
    classify->add_option("--n", range_text, "single-system rank range, e.g. 2..6");
    classify->add_option("--format", format, "json|md")->check(CLI::IsMember({"json", "md"}));
    classify->add_option("--out", out_path, "write the report here instead of stdout");
    classify->add_flag("--timing", timing, "record wall time in runtime_ms");

    CLI::App *law = app.add_subcommand("law-check", "monoidal-law audit of the circuit evaluator");
    law->add_option("--backend", backend, "classical|real|complex|all");
    law->add_option("--samples", samples, "random instances");
    law->add_option("--seed", seed, "RNG seed (default: OPT_FOUNDRY_SEED or 1)");
    law->add_option("--format", format, "json|md")->check(CLI::IsMember({"json", "md"}));
    law->add_option("--out", out_path, "write the report here instead of stdout");
    law->add_flag("--timing", timing, "record wall time in runtime_ms");

    CLI::App *purify_cmd = app.add_subcommand("purify", "sampled purification demo with marginal audit");
    add_common(purify_cmd);

    CLI::App *steer_cmd = app.add_subcommand("steer", "sampled steering demo with reconstruction audit");
    add_common(steer_cmd);

    CLI::App *circuit = app.add_subcommand("circuit", "circuit-language commands");
    circuit->require_subcommand(1);
    CLI::App *ceval = circuit->add_subcommand("eval", "evaluate a circuit file against bindings");
    std::string circuit_file, bindings_path, decl_name;
    ceval->add_option("file", circuit_file, "circuit source (.optc)")->required();
    ceval->add_option("--bindings", bindings_path, "JSON manifest of primitive bindings")->required();
    ceval->add_option("--backend", backend, "classical|real|complex");
    ceval->add_option("--decl", decl_name, "evaluate only this declaration");
    ceval->add_option("--out", out_path, "write results here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        auto timed = [&](auto &&fn) {
            auto t0 = std::chrono::steady_clock::now();
            CheckReport r = fn();
            if (timing)
                r.runtime_ms =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            return r;
        };

        if (post->parsed()) {
            CheckReport r = timed([&] { return postulate_table(parse_levels(levels_text), samples, seed); });
            emit(r, format, out_path);
            return r.pass ? 0 : 1;
        }
        if (classify->parsed()) {
            auto [lo, hi] = parse_range(range_text);
            CheckReport r = timed([&] { return classification_exclusion(lo, hi); });
            emit(r, format, out_path);
            return r.pass ? 0 : 1;
        }
        if (law->parsed()) {
            if (backend == "all") {
                std::vector<CheckReport> rs;
                bool pass = true;
                for (BackendKind k : {BackendKind::Classical, BackendKind::RealQT, BackendKind::ComplexQT}) {
                    rs.push_back(timed([&] { return law_check(k, samples, seed); }));
                    pass = pass && rs.back().pass;
                }
                emit_many(rs, format, out_path);
                return pass ? 0 : 1;
            }
            CheckReport r = timed([&] { return law_check(parse_backend(backend), samples, seed); });
            emit(r, format, out_path);
            return r.pass ? 0 : 1;
        }
        if (purify_cmd->parsed() || steer_cmd->parsed()) {
            BackendKind k = parse_backend(backend);
            if (k == BackendKind::Classical)
                throw CLI::ValidationError("--backend", "the classical backend has no purifying composite");
            bool is_purify = purify_cmd->parsed();
            CheckReport r = timed([&] {
                auto ls = parse_levels(levels_text);
                return is_purify ? purify_demo(k, ls, samples, seed, tol) : steer_demo(k, ls, samples, seed, tol);
            });
            emit(r, format, out_path);
            return r.pass ? 0 : 1;
        }
        if (ceval->parsed()) {
            std::ifstream is(circuit_file, std::ios::binary);
            if (!is) throw CLI::ValidationError("file", "cannot open '" + circuit_file + "'");
            std::stringstream buf;
            buf << is.rdbuf();
            CircuitProgram prog = parse_circuit(buf.str());
            CircuitEnv env = load_bindings(bindings_path, parse_backend(backend));

            std::ostringstream os;
            auto show = [&](const std::string &name) {
                EvalValue v = evaluate(prog, env, name);
                if (v.is_scalar())
                    os << name << " = " << format_scalar(v.scalar()) << "\n";
                else
                    os << name << " : " << join_wires(v.type.in) << " -> " << join_wires(v.type.out) << " ("
                       << v.m.rows << "x" << v.m.cols << ")\n";
            };
            if (!decl_name.empty()) {
                show(decl_name);
            } else {
                for (const auto &[name, expr] : prog.decls) show(name);
            }
            write_output(os.str(), out_path);
            return 0;
        }
    } catch (const CLI::ValidationError &e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const CircuitError &e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 2;
}
