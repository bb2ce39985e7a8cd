#include "tnf/classify.hpp"
#include "tnf/config.hpp"
#include "tnf/fixtures.hpp"
#include "tnf/oracle.hpp"
#include "tnf/struct_verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace tnf;

namespace {

constexpr int kUsage = 3;

struct Overrides {
    std::string config;
    std::optional<int> grid;
    std::optional<double> tol;
    std::string backend;
    std::string out;
};

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

template <class S>
std::string show(const S& v) {
    if constexpr (Num<S>::exact) return config_detail::text(v);
    else return fmt12(v);
}

int exit_for(VerdictKind k) {
    switch (k) {
    case VerdictKind::Proven: return 0;
    case VerdictKind::Refuted: return 1;
    case VerdictKind::Undetermined: return 2;
    }
    return 2;
}

Config load(const Overrides& o) {
    Config c = load_config(o.config);
    if (o.grid) c.options.grid = *o.grid;
    if (o.tol) c.options.tol = *o.tol;
    if (o.backend == "exact") c.options.backend = Backend::Exact;
    else if (o.backend == "float") c.options.backend = Backend::Float;
    if (c.options.backend == Backend::Exact && !c.f.is_linear())
        throw ConfigError("/options/backend", "exponential pieces need the float backend");
    return c;
}

template <class S>
S tol_of(const Config& c) {
    return c.options.tol ? from_double<S>(*c.options.tol) : default_tol<S>();
}

template <class S>
void print_header(const Config& c) {
    std::cout << "tnorm: " << c.F.str() << "\n";
    std::cout << "backend: " << Num<S>::name() << "\n";
}

template <class S>
int run_eval(const Config& c, const std::string& xs, const std::string& ys) {
    S x = Num<S>::from_rational(parse_rational(xs)), y = Num<S>::from_rational(parse_rational(ys));
    GeneratedT<S> t(c.f.cast<S>(), c.F.cast<S>());
    std::cout << "T(" << xs << "," << ys << ") = " << show(t(x, y)) << " (" << Num<S>::name() << ")\n";
    return 0;
}

template <class S>
int run_check(const Config& c) {
    auto f = c.f.cast<S>();
    auto F = c.F.cast<S>();
    print_header<S>(c);
    auto assoc = check_assoc(f, F);
    auto tn = check_tnorm(f, F);
    std::cout << "trace:\n";
    for (const auto& line : tn.trace) std::cout << "  - " << line << "\n";
    std::cout << "associativity: " << verdict_name(assoc.kind) << "\n";
    if (assoc.witness) std::cout << "witness: " << assoc.witness->str() << "\n";
    if (!assoc.note.empty()) std::cout << "note: " << assoc.note << "\n";
    std::cout << "t-norm: " << verdict_name(tn.kind);
    if (tn.witness && tn.witness->neutral) std::cout << " (" << tn.witness->str() << ")";
    std::cout << "\n";

    GeneratedT<S> t(f, F);
    GridSpec<S> grid{c.options.grid, t.critical_points()};
    Binary<S> T = [&t](const S& x, const S& y) { return t(x, y); };
    auto w = grid_assoc_search(T, grid, tol_of<S>(c));
    auto pts = grid.points().size();
    if (w) std::cout << "oracle: witness " << w->str() << "\n";
    else std::cout << "oracle: no witness on a " << pts << "^3 grid\n";
    if (assoc.proven() && w) {
        std::cout << "oracle contradicts the structural verdict\n";
        return 2;
    }
    return exit_for(assoc.kind);
}

template <class S>
int run_classify(const Config& c) {
    print_header<S>(c);
    auto cl = classify(c.f.cast<S>(), c.F.cast<S>());
    std::cout << "trace:\n";
    for (const auto& line : cl.trace) std::cout << "  - " << line << "\n";
    std::cout << "class: " << class_name(cl.kind) << "\n";
    if (cl.witness) std::cout << "witness: " << cl.witness->str() << "\n";
    if (!cl.note.empty()) std::cout << "note: " << cl.note << "\n";
    return 0;
}

template <class S>
int run_surface(const Config& c, const std::string& out) {
    GeneratedT<S> t(c.f.cast<S>(), c.F.cast<S>());
    auto pts = GridSpec<S>{c.options.grid, t.critical_points()}.points();
    namespace fs = std::filesystem;
    fs::path target(out);
    fs::path tmp = target;
    tmp += ".partial";
    {
        std::ofstream csv(tmp);
        if (!csv) {
            std::cerr << "cannot write '" << out << "'\n";
            return kUsage;
        }
        csv << "x,y,T\n";
        for (const auto& x : pts)
            for (const auto& y : pts)
                csv << fmt12(to_double(x)) << "," << fmt12(to_double(y)) << "," << fmt12(to_double(t(x, y))) << "\n";
        if (!csv) {
            csv.close();
            fs::remove(tmp);
            std::cerr << "write to '" << out << "' failed\n";
            return kUsage;
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        std::cerr << "cannot write '" << out << "': " << ec.message() << "\n";
        return kUsage;
    }
    std::cout << pts.size() * pts.size() << " rows written to " << out << "\n";
    return 0;
}

template <class Fn>
int dispatch(const Config& c, Fn&& fn) {
    if (c.options.backend == Backend::Exact) return fn(Rational{});
    return fn(0.0);
}

// Runs one fixture against its recorded outcome.
bool run_example(const Fixture& fx, std::ostream& os) {
    auto f = fx.f.cast<double>();
    auto F = fx.F.cast<double>();
    GeneratedT<double> t(f, F);
    bool ok = true;
    auto mark = [&](bool pass, const std::string& what) {
        os << "  " << (pass ? "ok   " : "FAIL ") << what << "\n";
        ok = ok && pass;
    };
    os << fx.id << ": " << fx.description << "\n";

    if (fx.closed_form) {
        GridSpec<double> grid{101, t.critical_points()};
        grid.extra.insert(grid.extra.end(), fx.extra.begin(), fx.extra.end());
        Binary<double> T = [&t](double x, double y) { return t(x, y); };
        double dev = compare_closed_form<double>(T, fx.closed_form, grid);
        mark(dev <= 1e-9, "closed form, max deviation " + fmt12(dev));
    }
    auto v = check_assoc(f, F);
    std::string got = verdict_name(v.kind);
    if (v.witness) got += " " + v.witness->str();
    mark(v.kind == fx.assoc, std::string("associativity ") + got);
    if (fx.witness) {
        const auto& w = *fx.witness;
        bool same = v.witness && std::abs(v.witness->x - w[0]) < 1e-12 && std::abs(v.witness->y - w[1]) < 1e-12 &&
                    std::abs(v.witness->z - w[2]) < 1e-12;
        mark(same, "witness (" + fmt12(w[0]) + "," + fmt12(w[1]) + "," + fmt12(w[2]) + ")");
    }
    if (fx.tnorm) {
        auto tn = check_tnorm(f, F);
        mark(tn.proven() == *fx.tnorm, std::string("t-norm ") + verdict_name(tn.kind));
    }
    auto cl = classify(f, F);
    mark(cl.kind == fx.cls, std::string("class ") + class_name(cl.kind));
    if (fx.exact_capable()) {
        auto q = check_assoc(fx.f, fx.F);
        mark(q.kind == fx.assoc, std::string("exact associativity ") + verdict_name(q.kind));
    }
    os << "  " << (ok ? "pass" : "FAIL") << "\n";
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generated two-place functions T(x,y) = f^(-1)(F(f(x),f(y))): evaluation and associativity checks"};
    app.require_subcommand(1);
    Overrides o;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", o.config, "JSON config with generator, tnorm and options");
        if (needs_config) opt->required()->check(CLI::ExistingFile);
        sub->add_option("--grid", o.grid, "grid points per axis")->check(CLI::Range(2, 100000));
        sub->add_option("--tol", o.tol, "oracle tolerance")->check(CLI::NonNegativeNumber);
        sub->add_option("--backend", o.backend, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    };

    std::string xs, ys, example_id;
    auto* eval = app.add_subcommand("eval", "print T(x,y)");
    add_common(eval, true);
    eval->add_option("x", xs)->required();
    eval->add_option("y", ys)->required();

    auto* check = app.add_subcommand("check", "associativity and t-norm verdicts with trace (exit 0/1/2)");
    add_common(check, true);
    auto* cls = app.add_subcommand("classify", "class of the generated t-norm");
    add_common(cls, true);
    auto* example = app.add_subcommand("example", "run a built-in example against its recorded outcome");
    example->add_option("id", example_id, "example id, or 'all'")->required();
    auto* surface = app.add_subcommand("surface", "write x,y,T as CSV");
    add_common(surface, true);
    surface->add_option("--out", o.out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*example) {
            if (example_id == "all") {
                bool ok = true;
                for (const auto& fx : fixtures()) ok = run_example(fx, std::cout) && ok;
                return ok ? 0 : 1;
            }
            return run_example(fixture(example_id), std::cout) ? 0 : 1;
        }
        Config c = load(o);
        if (*eval)
            return dispatch(c, [&](auto s) { return run_eval<decltype(s)>(c, xs, ys); });
        if (*check) return dispatch(c, [&](auto s) { return run_check<decltype(s)>(c); });
        if (*cls) return dispatch(c, [&](auto s) { return run_classify<decltype(s)>(c); });
        if (*surface) return dispatch(c, [&](auto s) { return run_surface<decltype(s)>(c, o.out); });
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const UnknownFixture& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
