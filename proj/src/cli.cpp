#include "nrs/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "nrs/homology.hpp"
#include "nrs/json_io.hpp"
#include "nrs/oracle.hpp"
#include "nrs/scanning.hpp"
#include "nrs/spaces.hpp"

namespace nrs {

namespace {

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

std::string join_args(const std::vector<std::string>& args) {
    std::string s = "nrs";
    for (const auto& a : args) {
        s += ' ';
        s += a;
    }
    return s;
}

Json load_json(const std::string& path, const std::string& inline_json) {
    try {
        if (!inline_json.empty()) return Json::parse(inline_json);
        if (path.empty()) throw InvalidInput("no input: pass --in FILE or --inline JSON");
        if (path == "-") {
            std::ostringstream buf;
            buf << std::cin.rdbuf();
            return Json::parse(buf.str());
        }
        std::ifstream in(path);
        if (!in) throw InvalidInput("cannot open input file: " + path);
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(std::string("input is not valid JSON: ") + e.what());
    }
}

Json dims_to_json(const GradedDims& g) {
    Json j = Json::object();
    for (int q = 0; q <= g.qmax(); ++q)
        if (g.at(q) != 0) j[std::to_string(q)] = g.at(q);
    return j;
}

void print_dims_text(std::ostream& out, const GradedDims& g) {
    out << (g.reduced ? "reduced " : "") << "dims over " << field_name(g.field) << ":\n";
    out << "  q  :";
    for (int q = 0; q <= g.qmax(); ++q) out << ' ' << std::setw(3) << q;
    out << "\n  dim:";
    for (int q = 0; q <= g.qmax(); ++q) out << ' ' << std::setw(3) << g.at(q);
    out << "\n";
}

struct GridSpec {
    std::set<int> mn_values{3, 4, 6, 9};
    int dmin = 1;
    int dmax = 30;
};

// Tiny grid grammar: clauses separated by ';', each one of
//   "mn in {3,4,6}"   "d <= 20"   "d >= 5"
GridSpec parse_grid(const std::string& text) {
    GridSpec spec;
    if (text.empty()) return spec;
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    std::stringstream ss(s);
    std::string clause;
    while (std::getline(ss, clause, ';')) {
        if (clause.empty()) continue;
        if (clause.rfind("mnin{", 0) == 0 && clause.back() == '}') {
            spec.mn_values.clear();
            std::stringstream vals(clause.substr(5, clause.size() - 6));
            std::string v;
            while (std::getline(vals, v, ',')) spec.mn_values.insert(std::stoi(v));
        } else if (clause.rfind("d<=", 0) == 0) {
            spec.dmax = std::stoi(clause.substr(3));
        } else if (clause.rfind("d>=", 0) == 0) {
            spec.dmin = std::stoi(clause.substr(3));
        } else {
            throw InvalidInput("cannot parse grid clause: \"" + clause + "\"");
        }
    }
    return spec;
}

struct GridCell {
    int m, n, d;
    Field field;
};

std::vector<GridCell> grid_cells(const GridSpec& spec, const std::vector<Field>& fields) {
    std::vector<GridCell> cells;
    for (int mn : spec.mn_values) {
        for (int m = 1; m <= mn; ++m) {
            if (mn % m != 0) continue;
            const int n = mn / m;
            for (int d = std::max({spec.dmin, n}); d <= spec.dmax; ++d)
                for (Field f : fields) cells.push_back({m, n, d, f});
        }
    }
    return cells;
}

Json report_to_json(const VerifyReport& rep) {
    Json j;
    j["m"] = rep.m;
    j["n"] = rep.n;
    j["d"] = rep.d;
    j["field"] = field_name(rep.field);
    j["qmax"] = rep.qmax;
    j["pass"] = rep.pass;
    const StabilityDims D = stability_dims(rep.d, rep.m, rep.n);
    j["D_real"] = D.real;
    j["D_complex"] = D.complex_;
    if (rep.first_mismatch_a) j["first_mismatch_a"] = *rep.first_mismatch_a;
    if (rep.first_mismatch_b) j["first_mismatch_b"] = *rep.first_mismatch_b;
    if (rep.first_mismatch_c) j["first_mismatch_c"] = *rep.first_mismatch_c;
    if (!rep.failures.empty()) {
        Json fails = Json::array();
        for (const auto& f : rep.failures)
            fails.push_back(Json{{"check", std::string(1, f.check)},
                                 {"q", f.q},
                                 {"lhs", f.lhs},
                                 {"rhs", f.rhs}});
        j["failures"] = fails;
    }
    return j;
}

}  // namespace

int cli_run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"non-resultant polynomial systems: membership, maps, and graded homology"};
    app.require_subcommand(1);
    const std::string command_echo = join_args(args);

    bool json_mode = false;
    app.add_flag("--json", json_mode, "machine-readable JSON output");

    std::string in_path, in1_path, in2_path, inline_json, inline1, inline2, csv_path;
    int d = 0, m = 0, n = 0, qmax = -1, jet_n = 2, resolution = 64, slot = -1, fox_j = 2;
    int trials = 10000, paths = 100, threads = 0, james_cut = -1;
    std::uint64_t seed = 0;
    bool seed_given = false, untruncated = false;
    std::string field_str = "f2", space_str = "polyR", grid_str, oracle_mode = "fox";
    double tol = 1e-10;

    std::function<int()> action;

    auto add_system_input = [&](CLI::App* cmd) {
        cmd->add_option("--in", in_path, "system JSON file ('-' for stdin)");
        cmd->add_option("--inline", inline_json, "system JSON given inline");
    };

    // check -----------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("check", "exact membership and stratum of a system");
        add_system_input(cmd);
        cmd->callback([&] {
            action = [&]() -> int {
                System sys = system_from_json(load_json(in_path, inline_json));
                const bool member = is_member(sys);
                std::optional<StratumSignature> sig;
                if (has_real_coefficients(sys)) sig = stratum_signature(sys);
                if (json_mode) {
                    Json j;
                    j["family"] = family_name(sys.space.family);
                    j["member"] = member;
                    if (sig)
                        j["stratum"] = Json{{"i", sig->i}, {"j", sig->j}};
                    else
                        j["stratum"] = nullptr;
                    out << j.dump() << "\n";
                } else {
                    out << "family " << family_name(sys.space.family) << ": member="
                        << (member ? "true" : "false");
                    if (sig)
                        out << ", stratum=(" << sig->i << "," << sig->j << ")";
                    else
                        out << ", stratum=none";
                    out << "\n";
                }
                return 0;
            };
        });
    }
    // jet -------------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("jet", "jet embedding of a single polynomial");
        cmd->add_option("--n", jet_n, "multiplicity bound n")->required();
        cmd->add_option("--in", in_path, "polynomial JSON file");
        cmd->add_option("--inline", inline_json, "polynomial JSON given inline");
        cmd->callback([&] {
            action = [&]() -> int {
                Poly<Rational> f = poly_from_json(load_json(in_path, inline_json));
                System sys = jet_embedding(f, jet_n);
                out << system_to_json(sys).dump() << "\n";
                return 0;
            };
        });
    }
    // stabilize ---------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("stabilize", "degree d -> d+1 stabilization map");
        add_system_input(cmd);
        cmd->add_option("--slot", slot, "stabilize only this slot (0-based)");
        cmd->callback([&] {
            action = [&]() -> int {
                System sys = system_from_json(load_json(in_path, inline_json));
                NumericSystem res = slot >= 0 ? stabilize_slot(sys, slot) : stabilize(sys);
                out << numeric_system_to_json(res).dump() << "\n";
                return 0;
            };
        });
    }
    // product -----------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("product", "loop product of two systems");
        cmd->add_option("--in1", in1_path, "first system JSON file")->required();
        cmd->add_option("--in2", in2_path, "second system JSON file")->required();
        cmd->callback([&] {
            action = [&]() -> int {
                System a = system_from_json(load_json(in1_path, inline1));
                System b = system_from_json(load_json(in2_path, inline2));
                out << numeric_system_to_json(loop_product(a, b)).dump() << "\n";
                return 0;
            };
        });
    }
    // double ------------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("double", "doubling map into the H+ space");
        add_system_input(cmd);
        cmd->callback([&] {
            action = [&]() -> int {
                System sys = system_from_json(load_json(in_path, inline_json));
                out << numeric_system_to_json(double_to_hplus(sys)).dump() << "\n";
                return 0;
            };
        });
    }
    // scan --------------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("scan", "evaluate the real loop and its mod-2 class");
        add_system_input(cmd);
        cmd->add_option("--resolution", resolution, "initial grid resolution");
        cmd->add_option("--csv", csv_path, "write the loop sample as CSV");
        cmd->callback([&] {
            action = [&]() -> int {
                System sys = system_from_json(load_json(in_path, inline_json));
                LoopSample loop = eval_real_loop(sys, resolution);
                const int cls = loop_class_mod2(loop);
                if (!csv_path.empty()) {
                    std::ofstream csv(csv_path);
                    if (!csv) throw InvalidInput("cannot open CSV output: " + csv_path);
                    csv << loop.to_csv();
                }
                if (json_mode) {
                    Json j;
                    j["points"] = loop.points.size();
                    j["class_mod2"] = cls;
                    j["d_mod2"] = sys.space.d % 2;
                    out << j.dump() << "\n";
                } else {
                    out << "loop sampled at " << loop.points.size() << " points; class mod 2 = "
                        << cls << " (d mod 2 = " << sys.space.d % 2 << ")\n";
                }
                return 0;
            };
        });
    }
    // betti -------------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("betti", "graded dimensions of splittings and loop models");
        cmd->add_option("--space", space_str,
                        "polyR | polyC | qR | B | P | loopmodel | omega2 | omegaS");
        cmd->add_option("--d", d, "degree")->required();
        cmd->add_option("--m", m, "tuple size m")->required();
        cmd->add_option("--n", n, "multiplicity bound n")->required();
        cmd->add_option("--field", field_str, "f2 | q");
        cmd->add_option("--qmax", qmax, "top homological degree (default D_complex + 10)");
        cmd->add_option("--james-cut", james_cut, "truncate the omegaS factor at this James stage");
        cmd->callback([&] {
            action = [&]() -> int {
                const Field field = field_from_name(field_str);
                const int qm = qmax >= 0 ? qmax : stability_dims(d, m, n).complex_ + 10;
                std::optional<int> cut;
                if (james_cut >= 0) cut = james_cut;
                GradedDims dims;
                std::string label;
                if (space_str == "loopmodel") {
                    dims = loop_model_betti(m * n - 1, m * n - 1, field, qm, cut);
                    label = "Omega^2 S^" + std::to_string(2 * m * n - 1) + " x Omega S^" +
                            std::to_string(m * n - 1);
                } else if (space_str == "omega2") {
                    dims = double_loop_betti(m * n - 1, field, qm);
                    label = "Omega^2 S^" + std::to_string(2 * m * n - 1);
                } else if (space_str == "omegaS") {
                    dims = loop_sphere_betti(m * n - 1, field, qm, cut);
                    label = "Omega S^" + std::to_string(m * n - 1);
                } else {
                    SpaceFormula f = space_formula(space_kind_from_name(space_str), d, m, n);
                    dims = formula_betti(f, field, qm);
                    label = format_formula(f);
                }
                if (json_mode) {
                    Json j;
                    j["space"] = space_str;
                    j["d"] = d;
                    j["m"] = m;
                    j["n"] = n;
                    j["field"] = field_name(field);
                    j["reduced"] = dims.reduced;
                    j["qmax"] = qm;
                    j["dims"] = dims_to_json(dims);
                    out << j.dump() << "\n";
                } else {
                    out << space_str << "(" << d << "," << m << "," << n << ") = " << label << "\n";
                    print_dims_text(out, dims);
                }
                return 0;
            };
        });
    }
    // e1 ----------------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("e1", "Vassiliev E^1 table");
        cmd->add_option("--d", d, "degree")->required();
        cmd->add_option("--m", m, "tuple size m")->required();
        cmd->add_option("--n", n, "multiplicity bound n")->required();
        cmd->add_option("--field", field_str, "f2 | q");
        cmd->add_option("--qmax", qmax, "top antidiagonal degree");
        cmd->add_flag("--untruncated", untruncated,
                      "drop the root-budget truncation of the inner j-sum (comparison only)");
        cmd->callback([&] {
            action = [&]() -> int {
                const Field field = field_from_name(field_str);
                const int qm = qmax >= 0 ? qmax : stability_dims(d, m, n).complex_ + 10;
                E1Table t = e1_table(d, m, n, field, d / n + qm, !untruncated);
                if (json_mode) {
                    Json entries = Json::object();
                    for (const auto& [ks, v] : t.entries)
                        entries[std::to_string(ks.first) + "," + std::to_string(ks.second)] = v;
                    Json j;
                    j["d"] = d;
                    j["m"] = m;
                    j["n"] = n;
                    j["field"] = field_name(field);
                    j["truncated"] = !untruncated;
                    j["entries"] = entries;
                    out << j.dump() << "\n";
                } else {
                    out << "E^1 entries (k, s) -> dim for (" << d << "," << m << "," << n << ") over "
                        << field_name(field) << ":\n";
                    for (const auto& [ks, v] : t.entries)
                        out << "  (" << ks.first << ", " << ks.second << ") -> " << v << "\n";
                }
                return 0;
            };
        });
    }
    // verify --------------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("verify", "run the theorem checks over a parameter grid");
        cmd->add_option("--grid", grid_str, "e.g. \"mn in {3,4,6}; d<=20\"");
        cmd->add_option("--field", field_str, "f2 | q | both");
        cmd->add_option("--threads", threads, "worker threads (default: hardware)");
        cmd->add_option("--qmax", qmax, "override the per-cell degree bound");
        cmd->callback([&] {
            action = [&]() -> int {
                std::vector<Field> fields;
                if (field_str == "both") {
                    fields = {Field::F2, Field::Q};
                } else {
                    fields = {field_from_name(field_str)};
                }
                GridSpec spec = parse_grid(grid_str);
                std::vector<GridCell> cells = grid_cells(spec, fields);
                std::vector<VerifyReport> reports(cells.size());

                // Read-only D_j cache sized for the whole grid (including the
                // Snaith sum's j-range), built before the parallel fan-out.
                int jmax = 1, cache_q = 1;
                for (const auto& c : cells) {
                    const int qm = qmax >= 0 ? qmax : stability_dims(c.d, c.m, c.n).complex_ + 10;
                    jmax = std::max({jmax, c.d / c.n, qm / (2 * c.m * c.n - 3) + 1});
                    cache_q = std::max(cache_q, c.d / c.n + qm);
                }
                const DjCache cache(jmax, cache_q);
                const DjProvider dj = [&cache](int j, Field fl, int qm) {
                    if (j > cache.jmax() || qm > cache.qmax()) return dj_betti(j, fl, qm);
                    GradedDims g = cache.get(j, fl);
                    g.dims.resize(static_cast<std::size_t>(qm) + 1, 0);
                    return g;
                };

                const int nthreads =
                    threads > 0 ? threads
                                : std::max(1u, std::thread::hardware_concurrency());
                std::atomic<std::size_t> next{0};
                std::mutex error_mutex;
                std::exception_ptr first_error;
                auto worker = [&] {
                    try {
                        for (std::size_t i = next++; i < cells.size(); i = next++) {
                            const auto& c = cells[i];
                            reports[i] = verify_theorems(c.d, c.m, c.n, c.field, qmax, dj);
                        }
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                    }
                };
                std::vector<std::thread> pool;
                for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
                worker();
                for (auto& t : pool) t.join();
                if (first_error) std::rethrow_exception(first_error);

                bool all_pass = true;
                int worst_margin = -1;
                for (const auto& r : reports) {
                    all_pass = all_pass && r.pass;
                    if (r.first_mismatch_a)
                        worst_margin = std::max(worst_margin,
                                                *r.first_mismatch_a -
                                                    stability_dims(r.d, r.m, r.n).real);
                }
                if (json_mode) {
                    Json j;
                    j["command"] = command_echo;
                    j["timestamp"] = iso_timestamp();
                    j["cells"] = Json::array();
                    for (const auto& r : reports) j["cells"].push_back(report_to_json(r));
                    j["all_pass"] = all_pass;
                    out << j.dump() << "\n";
                } else {
                    int passed = 0;
                    for (const auto& r : reports) {
                        if (r.pass) {
                            ++passed;
                            continue;
                        }
                        out << "FAIL (" << r.d << "," << r.m << "," << r.n << ") over "
                            << field_name(r.field) << ":";
                        for (const auto& f : r.failures)
                            out << " [" << f.check << " q=" << f.q << " " << f.lhs
                                << "!=" << f.rhs << "]";
                        out << "\n";
                    }
                    out << passed << "/" << reports.size() << " cells pass";
                    if (worst_margin >= 0)
                        out << "; model agreement always extends " << worst_margin
                            << " degree(s) past D(d;m,n) before diverging";
                    out << "\n";
                }
                return all_pass ? 0 : 1;
            };
        });
    }
    // oracle ----------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("oracle", "brute-force certificates and fuzzers");
        cmd->add_option("--mode", oracle_mode, "fox | fuzz | rate");
        cmd->add_option("--j", fox_j, "configuration space size (fox)");
        cmd->add_option("--d", d, "degree (fuzz/rate)");
        cmd->add_option("--m", m, "tuple size (fuzz/rate)");
        cmd->add_option("--n", n, "multiplicity bound (fuzz/rate)");
        cmd->add_option("--trials", trials, "trial count");
        cmd->add_option("--qmax", qmax, "top degree (fox)");
        auto* seed_opt = cmd->add_option("--seed", seed, "RNG seed");
        cmd->callback([&, seed_opt] {
            seed_given = seed_opt->count() > 0;
            action = [&]() -> int {
                if (oracle_mode == "fox") {
                    const int qm = qmax >= 0 ? qmax : fox_j;
                    GradedDims dims = fox_neuwirth_betti(fox_j, qm);
                    if (json_mode) {
                        Json j;
                        j["j"] = fox_j;
                        j["dims"] = dims_to_json(dims);
                        out << j.dump() << "\n";
                    } else {
                        print_dims_text(out, dims);
                    }
                    return 0;
                }
                if (json_mode && !seed_given)
                    throw InvalidInput("--seed is mandatory for stochastic subcommands in --json mode");
                if (oracle_mode == "fuzz") {
                    SampleReport rep = planted_root_fuzz(d, m, n, trials, seed);
                    if (json_mode) {
                        Json hist = Json::object();
                        for (const auto& [ij, c] : rep.stratum_histogram)
                            hist[std::to_string(ij.first) + "," + std::to_string(ij.second)] = c;
                        Json j;
                        j["command"] = command_echo;
                        j["trials"] = rep.trials;
                        j["seed"] = rep.seed;
                        j["stratum_histogram"] = hist;
                        j["pass"] = rep.all_assertions_passed;
                        j["failures"] = rep.failures;
                        out << j.dump() << "\n";
                    } else {
                        out << "planted-root fuzz: " << rep.trials << " trials, "
                            << (rep.all_assertions_passed ? "all assertions passed"
                                                          : "ASSERTIONS FAILED")
                            << " (seed " << rep.seed << ")\n";
                        for (const auto& f : rep.failures) out << "  " << f << "\n";
                    }
                    return rep.all_assertions_passed ? 0 : 1;
                }
                if (oracle_mode == "rate") {
                    MemberRateReport rep = member_rate_experiment(d, m, n, trials, seed);
                    const bool ok = rep.uncertified_nonmembers == 0;
                    if (json_mode) {
                        Json j;
                        j["command"] = command_echo;
                        j["trials"] = rep.trials;
                        j["seed"] = rep.seed;
                        j["members"] = rep.members;
                        j["genuine_nonmembers"] = rep.genuine_nonmembers;
                        j["uncertified_nonmembers"] = rep.uncertified_nonmembers;
                        j["pass"] = ok;
                        out << j.dump() << "\n";
                    } else {
                        out << "member rate: " << rep.members << "/" << rep.trials
                            << " members; non-members certified genuine: " << rep.genuine_nonmembers
                            << "; uncertified: " << rep.uncertified_nonmembers << " (seed "
                            << rep.seed << ")\n";
                    }
                    return ok ? 0 : 1;
                }
                throw InvalidInput("oracle --mode must be fox, fuzz, or rate");
            };
        });
    }
    // pi0 ---------------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("pi0", "component sampling for (m, n) = (1, 2)");
        cmd->add_option("--d", d, "degree")->required();
        cmd->add_option("--trials", trials, "sample count");
        cmd->add_option("--paths", paths, "straight-line connectivity checks");
        auto* seed_opt = cmd->add_option("--seed", seed, "RNG seed");
        cmd->callback([&, seed_opt] {
            seed_given = seed_opt->count() > 0;
            action = [&]() -> int {
                if (json_mode && !seed_given)
                    throw InvalidInput("--seed is mandatory for stochastic subcommands in --json mode");
                Pi0Report rep = pi0_experiment_12(d, trials, seed, paths);
                const bool ok = rep.all_labels_seen && rep.label_violations == 0 &&
                                rep.label_mismatches == 0;
                if (json_mode) {
                    Json j;
                    j["command"] = command_echo;
                    j["d"] = rep.d;
                    j["trials"] = rep.trials;
                    j["seed"] = rep.seed;
                    j["histogram"] = rep.histogram;
                    j["paths_checked"] = rep.paths_checked;
                    j["paths_discarded"] = rep.paths_discarded;
                    j["label_violations"] = rep.label_violations;
                    j["pass"] = ok;
                    out << j.dump() << "\n";
                } else {
                    out << "pi0(d=" << d << "): histogram [";
                    for (std::size_t i = 0; i < rep.histogram.size(); ++i)
                        out << (i ? " " : "") << rep.histogram[i];
                    out << "], paths checked " << rep.paths_checked << ", violations "
                        << rep.label_violations << " (seed " << rep.seed << ")\n";
                }
                return ok ? 0 : 1;
            };
        });
    }
    // roots (small utility exposing the numeric kernel) -----------------------
    {
        auto* cmd = app.add_subcommand("roots", "numeric roots of a polynomial");
        cmd->add_option("--in", in_path, "polynomial JSON file");
        cmd->add_option("--inline", inline_json, "polynomial JSON given inline");
        cmd->add_option("--tol", tol, "residual tolerance");
        cmd->callback([&] {
            action = [&]() -> int {
                Poly<Rational> f = poly_from_json(load_json(in_path, inline_json));
                auto roots = roots_numeric(f, tol);
                Json arr = Json::array();
                for (const auto& r : roots) arr.push_back(Json{{"re", r.real()}, {"im", r.imag()}});
                out << Json{{"roots", arr}}.dump() << "\n";
                return 0;
            };
        });
    }
    // efield --------------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand(
            "efield", "sample 1 + sum 1/(z - a_k) for a squarefree real polynomial");
        cmd->add_option("--in", in_path, "polynomial JSON file");
        cmd->add_option("--inline", inline_json, "polynomial JSON given inline");
        cmd->add_option("--csv", csv_path, "write samples as CSV");
        cmd->add_option("--resolution", resolution, "grid points per axis");
        cmd->callback([&] {
            action = [&]() -> int {
                Poly<Rational> f = poly_from_json(load_json(in_path, inline_json));
                if (component_index_12(f) < 0) return 1;  // validates membership
                auto roots = roots_numeric(f, 1e-8);
                // Square grid covering the roots with a margin.
                double lim = 1.0;
                for (const auto& r : roots) lim = std::max(lim, std::abs(r) + 1.0);
                std::vector<std::complex<double>> grid;
                const int res = std::max(resolution, 8);
                for (int i = 0; i <= res; ++i)
                    for (int k = 0; k <= res; ++k)
                        grid.emplace_back(-lim + 2 * lim * i / res, -lim + 2 * lim * k / res);
                auto samples = electric_field_samples(roots, grid);
                std::ostringstream csv;
                csv << "re_z,im_z,re_val,im_val,at_root\n";
                for (const auto& s : samples)
                    csv << s.z.real() << "," << s.z.imag() << "," << s.value.real() << ","
                        << s.value.imag() << "," << (s.at_root ? 1 : 0) << "\n";
                if (!csv_path.empty()) {
                    std::ofstream fout(csv_path);
                    if (!fout) throw InvalidInput("cannot open CSV output: " + csv_path);
                    fout << csv.str();
                    out << "wrote " << samples.size() << " samples to " << csv_path << "\n";
                } else {
                    out << csv.str();
                }
                return 0;
            };
        });
    }

    // Let global flags (--json) appear after the subcommand name.
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const InvalidInput& e) {
        if (json_mode) err << Json{{"error", e.what()}, {"kind", "invalid-input"}}.dump() << "\n";
        else err << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedParameters& e) {
        if (json_mode) err << Json{{"error", e.what()}, {"kind", "unsupported-parameters"}}.dump() << "\n";
        else err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalFailure& e) {
        if (json_mode)
            err << Json{{"error", e.what()},
                        {"kind", "numerical-failure"},
                        {"achieved_residual", e.achieved_residual}}
                       .dump()
                << "\n";
        else err << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        if (json_mode) err << Json{{"error", e.what()}, {"kind", "internal"}}.dump() << "\n";
        else err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace nrs
