#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kcode/baseline.hpp"
#include "kcode/io.hpp"

using namespace kcode;

namespace {

// A --source/--measure style argument: a path when the file exists,
// otherwise inline bits.
BitString load_bits(const std::string& arg) {
    std::ifstream f(arg);
    if (f) {
        std::string content((std::istreambuf_iterator<char>(f)),
                            std::istreambuf_iterator<char>());
        std::istringstream ss(content);
        std::string tok;
        if (!(ss >> tok)) throw ParseError("empty source file " + arg);
        return BitString::from_token(tok);
    }
    return BitString::from_token(arg);
}

AvoidSet load_avoid(const std::string& path) {
    if (path.empty()) return AvoidSet{};
    std::ifstream f(path);
    if (!f) throw ParseError("cannot read " + path);
    return read_avoid_set(f);
}

// `len-log` needs its anchor (the enumeration is the anchor's prefix
// chain); anything else is a table file path.
Measure load_measure(const std::string& spec, const BitString& anchor) {
    if (spec == "len-log") return len_log_measure(anchor);
    std::ifstream f(spec);
    if (!f) throw ParseError("cannot read measure " + spec);
    return read_measure_table(f);
}

std::istream& pick_input(const std::string& path, std::ifstream& file) {
    if (path.empty() || path == "-") return std::cin;
    file.open(path);
    if (!file) throw ParseError("cannot read " + path);
    return file;
}

std::ostream& pick_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw ParseError("cannot write " + path);
    return file;
}

int dispatch(const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const NotACode& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const HypothesisFailure& e) {
        std::cerr << "internal: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"layered Kraft-Chaitin coding toolkit"};
    app.require_subcommand(1);

    std::string base, lengths_path, requests_path, avoid_path, measure_spec = "len-log";
    std::string source_arg, code_path, run_path, out_path, schedule_name_arg = "linear";
    std::string ns_arg = "256,1024,4096";
    int n = -1, bound = -1;
    bool snapshots = false;

    auto* solve = app.add_subcommand("solve-kc", "greedy prefix-free allocation");
    solve->add_option("--base", base, "base string (relativized)");
    solve->add_option("--lengths", lengths_path, "length file, one per line (default stdin)");

    auto* trace = app.add_subcommand("trace-dump", "allocation with per-step trace state");
    trace->add_option("--base", base, "base string (relativized)");
    trace->add_option("--lengths", lengths_path, "length file (default stdin)");

    auto* lay = app.add_subcommand("layered-solve", "layered greedy solution");
    lay->add_option("--requests", requests_path, "request file")->required();
    lay->add_option("--avoid", avoid_path, "avoid-set file (interleaved when given)");
    lay->add_flag("--snapshots", snapshots, "print sets after every stage");

    auto* enc = app.add_subcommand("encode", "code a source prefix");
    enc->add_option("--measure", measure_spec, "len-log or table file");
    enc->add_option("--avoid", avoid_path, "avoid-set file");
    enc->add_option("--source", source_arg, "source bits or file")->required();
    enc->add_option("--n", n, "target length")->required();
    enc->add_option("--bound", bound, "working bound N (default |source|)");
    enc->add_option("--out", out_path, "code file (default stdout)");

    auto* dec = app.add_subcommand("decode", "recover a source prefix from a code file");
    dec->add_option("--measure", measure_spec, "len-log or table file");
    dec->add_option("--avoid", avoid_path, "avoid-set file");
    dec->add_option("--code", code_path, "code file")->required();
    dec->add_option("--n", n, "target length")->required();

    auto* use = app.add_subcommand("use-table", "oracle-use m(n) for every n");
    use->add_option("--measure", measure_spec, "len-log or table file");
    use->add_option("--avoid", avoid_path, "avoid-set file (adds the shift)");
    use->add_option("--source", source_arg, "source bits or file")->required();
    use->add_option("--bound", bound, "working bound N (default |source|)");

    auto* denc = app.add_subcommand("dynamic-encode", "code against an approximation run");
    denc->add_option("--run", run_path, "run file")->required();
    denc->add_option("--avoid", avoid_path, "avoid-set file");
    denc->add_option("--source", source_arg, "source bits or file")->required();
    denc->add_option("--n", n, "target length")->required();
    denc->add_option("--out", out_path, "code file (default stdout)");

    auto* ddec = app.add_subcommand("dynamic-decode", "decode against an approximation run");
    ddec->add_option("--run", run_path, "run file")->required();
    ddec->add_option("--avoid", avoid_path, "avoid-set file");
    ddec->add_option("--code", code_path, "code file")->required();
    ddec->add_option("--n", n, "target length")->required();

    auto* cmp = app.add_subcommand("compare", "baseline vs layered oracle-use");
    cmp->add_option("--ns", ns_arg, "comma-separated lengths");
    cmp->add_option("--schedule", schedule_name_arg, "linear|quadratic|exponential");
    cmp->add_option("--out", out_path, "delimited output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // usage problems map to 1, --help to 0
    }

    return dispatch([&] {
        if (*solve || *trace) {
            std::ifstream file;
            auto lengths = read_lengths(pick_input(lengths_path, file));
            PlainSolver s(BitString::from_token(base.empty() ? "-" : base));
            for (std::size_t i = 0; i < lengths.size(); ++i) {
                BitString code;
                try {
                    code = s.step(lengths[i]);
                } catch (const BudgetExceeded&) {
                    throw BudgetExceeded("budget exceeded at request index " + std::to_string(i));
                }
                std::cout << code.token() << '\n';
                if (*trace) {
                    std::cout << "  weight " << s.weight().to_fraction() << ", trace {";
                    bool first = true;
                    for (int p : s.trace().positions) {
                        std::cout << (first ? "" : ", ") << p;
                        first = false;
                    }
                    std::cout << "}, fillers";
                    for (const auto& [p, mu] : s.fillers()) std::cout << ' ' << mu.token();
                    std::cout << '\n';
                }
            }
        } else if (*lay) {
            std::ifstream file;
            auto requests = read_requests(pick_input(requests_path, file));
            auto print_sets = [](const std::vector<std::vector<BitString>>& sets) {
                for (std::size_t i = 1; i < sets.size(); ++i) {
                    std::cout << 'S' << i << ':';
                    for (const auto& c : sets[i]) std::cout << ' ' << c.token();
                    std::cout << '\n';
                }
            };
            if (avoid_path.empty()) {
                auto res = layered_solve(requests);
                if (snapshots)
                    for (std::size_t t = 0; t < res.snapshots.size(); ++t) {
                        std::cout << "stage " << t + 1 << '\n';
                        print_sets(res.snapshots[t]);
                    }
                else
                    print_sets(res.solver.snapshot());
            } else {
                auto q = load_avoid(avoid_path);
                auto res = interleave_solve(requests, q);
                print_sets(res.solver.snapshot());
                std::cout << "outdated:";
                for (int i : res.outdated) std::cout << ' ' << i;
                std::cout << "\nejected:";
                for (const auto& e : res.filter.ejected) std::cout << ' ' << e.code.token();
                std::cout << '\n';
            }
        } else if (*enc) {
            BitString x = load_bits(source_arg);
            if (bound >= 0) x = x.prefix(static_cast<std::size_t>(bound));
            auto q = load_avoid(avoid_path);
            auto I = load_measure(measure_spec, x);
            auto cp = encode(x, I, q, n);
            CodeFile f;
            f.measure_id = I.id;
            f.measure_params = I.id == "len-log" ? x.token() : measure_spec;
            f.shift = cp.shift;
            f.bound = cp.bound;
            f.avoid_hash = avoid_hash(q);
            f.bits = cp.y;
            std::ofstream ofile;
            write_code_file(pick_output(out_path, ofile), f);
        } else if (*dec) {
            std::ifstream cfile(code_path);
            if (!cfile) throw ParseError("cannot read " + code_path);
            auto f = read_code_file(cfile);
            auto q = load_avoid(avoid_path);
            if (f.avoid_hash != avoid_hash(q))
                throw ParseError("avoid-set does not match the code file header");
            auto I = load_measure(f.measure_id == "len-log" ? "len-log" : measure_spec,
                                  BitString::from_token(f.measure_params));
            auto r = decode(f.bits, I, q, n, f.shift);
            std::cout << r.prefix.token() << '\n';
        } else if (*use) {
            BitString x = load_bits(source_arg);
            if (bound >= 0) x = x.prefix(static_cast<std::size_t>(bound));
            auto I = load_measure(measure_spec, x);
            int shift = 0;
            if (!avoid_path.empty()) {
                auto q = load_avoid(avoid_path);
                shift = encode(x, I, q, 0).shift;
            }
            std::cout << "0 0\n";
            for (int t = 1; t <= static_cast<int>(x.size()); ++t)
                std::cout << t << ' ' << oracle_use(I, x, t).use + shift << '\n';
        } else if (*denc) {
            std::ifstream rfile(run_path);
            if (!rfile) throw ParseError("cannot read " + run_path);
            auto run = read_run(rfile);
            BitString x = load_bits(source_arg);
            auto q = load_avoid(avoid_path);
            auto cp = dynamic_encode(x, run, q, n);
            CodeFile f;
            f.measure_id = "approx-run";
            f.measure_params = run_path;
            f.shift = cp.shift;
            f.bound = cp.bound;
            f.avoid_hash = avoid_hash(q);
            f.bits = cp.y;
            std::ofstream ofile;
            write_code_file(pick_output(out_path, ofile), f);
        } else if (*ddec) {
            std::ifstream rfile(run_path);
            if (!rfile) throw ParseError("cannot read " + run_path);
            auto run = read_run(rfile);
            std::ifstream cfile(code_path);
            if (!cfile) throw ParseError("cannot read " + code_path);
            auto f = read_code_file(cfile);
            auto q = load_avoid(avoid_path);
            if (f.avoid_hash != avoid_hash(q))
                throw ParseError("avoid-set does not match the code file header");
            auto r = dynamic_decode(f.bits, run, q, n);
            std::cout << r.prefix.token() << '\n';
        } else if (*cmp) {
            std::vector<int> ns;
            std::stringstream ss(ns_arg);
            std::string tok;
            while (std::getline(ss, tok, ',')) ns.push_back(std::stoi(tok));
            auto rep = overhead_report(schedule_from_name(schedule_name_arg), ns);
            std::printf("%8s %12s %13s %9s\n", "n", "layered-use", "baseline-use", "overhead");
            for (const auto& r : rep.rows)
                std::printf("%8d %12d %13d %9d\n", r.n, r.layered_use, r.baseline_use,
                            r.overhead);
            if (!out_path.empty()) {
                std::ofstream ofile(out_path);
                if (!ofile) throw ParseError("cannot write " + out_path);
                ofile << "n,layered_use,baseline_use,overhead\n";
                for (const auto& r : rep.rows)
                    ofile << r.n << ',' << r.layered_use << ',' << r.baseline_use << ','
                          << r.overhead << '\n';
            }
        }
    });
}
