#include "specialsys/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "specialsys/classify.hpp"
#include "specialsys/cremona.hpp"
#include "specialsys/divisor.hpp"
#include "specialsys/notation.hpp"
#include "specialsys/oracle.hpp"

namespace specialsys::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

json json_class(const DivisorClass& cls) {
    json j;
    j["degree"] = cls.degree;
    j["mults"] = cls.mults;
    j["text"] = render_slots(cls);
    return j;
}

json json_header(const char* command) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

const char* yesno(bool b) { return b ? "yes" : "no"; }

std::string mode_name(DimensionMode mode) {
    return mode == DimensionMode::Symbolic ? "symbolic" : "oracle";
}

struct SharedFlags {
    bool json_output = false;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t prime = kDefaultPrime;
    int trials = kDefaultTrials;
    int jobs = 1;

    OracleConfig oracle() const { return OracleConfig{prime, trials, seed, jobs}; }
};

DimensionMode parse_mode(const std::string& mode) {
    if (mode == "symbolic") return DimensionMode::Symbolic;
    if (mode == "oracle") return DimensionMode::Oracle;
    throw std::invalid_argument("unknown mode '" + mode + "' (expected symbolic or oracle)");
}

// ---- vdim ----------------------------------------------------------

int cmd_vdim(const std::string& system, Int doubles, const SharedFlags& flags, std::ostream& out) {
    SystemSpec spec;
    spec.surface.kind = SurfaceKind::RationalAnticanonical;
    spec.base = parse_class(system);
    spec.doubles = doubles;
    const DivisorClass full = spec.full_class();
    const Int vdim = virtual_dim(full, 1);
    const Int edim = expected_dim(full, 1);
    if (flags.json_output) {
        json j = json_header("vdim");
        j["system"] = render_canonical(full);
        j["degree"] = full.degree;
        j["mults"] = full.mults;
        j["vdim"] = vdim;
        j["edim"] = edim;
        emit(out, j);
    } else {
        out << "vdim=" << vdim << ", edim=" << edim << "\n";
    }
    return 0;
}

// ---- adim ----------------------------------------------------------

int cmd_adim(const std::string& system, Int doubles, std::vector<std::uint64_t> primes,
             const SharedFlags& flags, std::ostream& out) {
    SystemSpec spec;
    spec.surface.kind = SurfaceKind::RationalAnticanonical;
    spec.base = parse_class(system);
    spec.doubles = doubles;
    const DivisorClass full = spec.full_class();
    if (primes.empty()) primes.push_back(flags.prime);

    struct PrimeRun {
        std::uint64_t prime;
        RankResult result;
    };
    std::vector<PrimeRun> runs;
    for (std::uint64_t p : primes) {
        OracleConfig config = flags.oracle();
        config.prime = p;
        runs.push_back({p, actual_dim(interpolation_problem(spec, config), config.jobs)});
    }

    const Int vdim = virtual_dim(full, 1);
    const Int edim = expected_dim(full, 1);
    const Int adim = runs.front().result.adim;
    const bool agree = std::all_of(runs.begin(), runs.end(),
                                   [&](const PrimeRun& r) { return r.result.adim == adim; });
    const bool special = agree && adim > edim;

    if (flags.json_output) {
        json j = json_header("adim");
        j["system"] = render_canonical(full);
        j["degree"] = full.degree;
        j["mults"] = full.mults;
        j["trials"] = flags.trials;
        j["seed"] = flags.seed;
        j["results"] = json::array();
        for (const auto& r : runs) {
            json jr;
            jr["prime"] = r.prime;
            jr["rank"] = r.result.rank;
            jr["per_trial"] = r.result.per_trial;
            jr["adim"] = r.result.adim;
            j["results"].push_back(jr);
        }
        j["agree"] = agree;
        j["vdim"] = vdim;
        j["edim"] = edim;
        j["adim"] = adim;
        j["special"] = special;
        emit(out, j);
    } else {
        for (const auto& r : runs) {
            out << "prime " << r.prime << ": rank " << r.result.rank << ", per-trial [";
            for (std::size_t i = 0; i < r.result.per_trial.size(); ++i)
                out << (i ? ", " : "") << r.result.per_trial[i];
            out << "], adim " << r.result.adim << "\n";
        }
        if (runs.size() > 1) out << "primes agree: " << yesno(agree) << "\n";
        out << "adim=" << adim << ", vdim=" << vdim << ", special=" << yesno(special) << "\n";
    }
    return 0;
}

// ---- special -------------------------------------------------------

json json_decomposition(const Decomposition& dec) {
    json j;
    j["fixed"] = json::array();
    for (const auto& p : dec.fixed) {
        json jp;
        jp["class"] = json_class(p.witness);
        jp["count"] = p.count;
        j["fixed"].push_back(jp);
    }
    if (dec.free) {
        json jf;
        jf["class"] = json_class(dec.free->cls);
        jf["pencil_multiple"] = dec.free->pencil_multiple;
        jf["pencil"] = dec.free->pencil ? json_class(*dec.free->pencil) : json(nullptr);
        j["free"] = jf;
    } else {
        j["free"] = nullptr;
    }
    return j;
}

int cmd_special(const std::string& system, Int doubles, bool verify, const SharedFlags& flags,
                std::ostream& out, std::ostream& err) {
    const DivisorClass cls = parse_class(system);
    SystemSpec spec = split_plane_system(cls, doubles);
    const DivisorClass full = spec.full_class();
    const Verdict v = speciality_plane(spec);

    std::optional<Int> oracle_adim;
    if (verify) oracle_adim = dimension_pair(spec, flags.oracle()).adim;
    const bool mismatch = verify && *oracle_adim != v.adim_predicted;

    if (flags.json_output) {
        json j = json_header("special");
        j["system"] = render_canonical(full);
        j["degree"] = full.degree;
        j["mults"] = full.mults;
        j["vdim"] = v.vdim;
        j["edim"] = v.edim;
        j["adim"] = v.adim_predicted;
        j["special"] = v.special;
        j["witness"] = v.witness ? json_class(*v.witness) : json(nullptr);
        j["decomposition"] = v.decomposition ? json_decomposition(*v.decomposition) : json(nullptr);
        if (verify) {
            json jv;
            jv["prime"] = flags.prime;
            jv["trials"] = flags.trials;
            jv["seed"] = flags.seed;
            jv["adim_oracle"] = *oracle_adim;
            jv["agree"] = !mismatch;
            j["verify"] = jv;
        }
        emit(out, j);
    } else {
        out << "special: " << yesno(v.special) << ", vdim=" << v.vdim << ", adim=" << v.adim_predicted;
        if (v.witness) out << ", witness=" << render_parens(*v.witness);
        out << "\n";
        if (v.decomposition) {
            const auto& dec = *v.decomposition;
            out << "fixed:";
            if (dec.fixed.empty()) out << " none";
            for (std::size_t i = 0; i < dec.fixed.size(); ++i)
                out << (i ? ", " : " ") << dec.fixed[i].count << " x " << render_parens(dec.fixed[i].witness);
            out << "\n";
            out << "free:";
            if (!dec.free) {
                out << " none";
            } else if (dec.free->pencil) {
                out << " " << dec.free->pencil_multiple << " x " << render_parens(*dec.free->pencil)
                    << " (pencil)";
            } else {
                out << " " << render_parens(dec.free->cls);
            }
            out << "\n";
        } else {
            out << "system is empty\n";
        }
        if (verify)
            out << "oracle: adim=" << *oracle_adim << " (prime " << flags.prime
                << "), agree=" << yesno(!mismatch) << "\n";
    }
    if (mismatch) {
        err << "error: symbolic verdict disagrees with the finite-field oracle (adim " << v.adim_predicted
            << " vs " << *oracle_adim << ")\n";
        return 3;
    }
    return 0;
}

// ---- reduce --------------------------------------------------------

const char* terminal_name(Terminal t) {
    switch (t) {
        case Terminal::Standard: return "standard";
        case Terminal::NegativeDegree: return "negative-degree";
        case Terminal::NegativeMultiplicity: return "negative-multiplicity";
    }
    return "?";
}

int cmd_reduce(const std::string& system, const SharedFlags& flags, std::ostream& out) {
    const DivisorClass cls = parse_class(system);
    const ReducedForm red = to_standard_form(cls);

    if (flags.json_output) {
        json j = json_header("reduce");
        j["input"] = json_class(cls);
        j["terminal"] = terminal_name(red.terminal);
        if (red.terminal == Terminal::NegativeMultiplicity) {
            j["offending_slot"] = red.offending_slot + 1;
            j["offending_value"] = red.offending_value;
        }
        j["result"] = json_class(red.cls.normalized());
        j["steps"] = red.trace.step_count();
        j["trace"] = json::array();
        for (const auto& e : red.trace.entries) {
            json je;
            if (const auto* step = std::get_if<CremonaStep>(&e)) {
                je["cremona"] = {step->slots[0] + 1, step->slots[1] + 1, step->slots[2] + 1};
                je["t"] = step->t;
            } else {
                const auto& perm = std::get<SlotPermutation>(e);
                json order = json::array();
                for (std::size_t s : perm) order.push_back(s + 1);
                je["sort"] = order;
            }
            j["trace"].push_back(je);
        }
        emit(out, j);
    } else {
        out << "input: " << render_slots(cls) << "\n";
        out << "terminal: " << terminal_name(red.terminal);
        if (red.terminal == Terminal::NegativeMultiplicity)
            out << " (slot " << red.offending_slot + 1 << ", value " << red.offending_value << ")";
        out << "\n";
        out << "result: " << render_slots(red.cls.normalized()) << "\n";
        out << "trace: " << red.trace.step_count() << " cremona step"
            << (red.trace.step_count() == 1 ? "" : "s") << "\n";
        for (const auto& e : red.trace.entries) {
            if (const auto* step = std::get_if<CremonaStep>(&e)) {
                out << "  cremona (" << step->slots[0] + 1 << ", " << step->slots[1] + 1 << ", "
                    << step->slots[2] + 1 << ") t=" << step->t << "\n";
            } else {
                const auto& perm = std::get<SlotPermutation>(e);
                out << "  sort [";
                for (std::size_t i = 0; i < perm.size(); ++i) out << (i ? ", " : "") << perm[i] + 1;
                out << "]\n";
            }
        }
    }
    return 0;
}

// ---- neg-curves ----------------------------------------------------

int cmd_neg_curves(Int r, Int bound, const SharedFlags& flags, std::ostream& out) {
    if (r < 1) throw std::invalid_argument("neg-curves: r must be >= 1");
    const auto classes = enumerate_minus_one_classes(static_cast<std::size_t>(r), bound);
    if (flags.json_output) {
        json j = json_header("neg-curves");
        j["r"] = r;
        j["bound"] = bound;
        j["count"] = classes.size();
        j["classes"] = json::array();
        for (const auto& c : classes) j["classes"].push_back(json_class(c));
        emit(out, j);
    } else {
        out << "count: " << classes.size() << "\n";
        for (const auto& c : classes) out << render_parens(c) << "\n";
    }
    return 0;
}

// ---- secant --------------------------------------------------------

int cmd_secant(const std::string& system, Int k, const std::string& mode_str, const SharedFlags& flags,
               std::ostream& out) {
    const DivisorClass H = parse_class(system);
    const DimensionMode mode = parse_mode(mode_str);
    const SecantReport rep = secant_report(H, k, mode, flags.oracle());
    if (flags.json_output) {
        json j = json_header("secant");
        j["H"] = json_class(rep.H);
        j["k"] = rep.k;
        j["mode"] = mode_name(mode);
        j["N"] = rep.N;
        j["expected"] = rep.expected;
        j["actual"] = rep.actual;
        j["defective"] = rep.defective;
        emit(out, j);
    } else {
        out << "H=" << render_parens(rep.H) << ", k=" << rep.k << ": N=" << rep.N
            << ", expected=" << rep.expected << ", actual=" << rep.actual
            << ", defective=" << yesno(rep.defective) << "\n";
    }
    return 0;
}

// ---- scan ----------------------------------------------------------

int cmd_scan(Int dmax, Int kmax, const std::string& mode_str, const SharedFlags& flags, std::ostream& out) {
    const DimensionMode mode = parse_mode(mode_str);
    const auto reports = scan_defective(dmax, kmax, mode, flags.oracle(), flags.jobs);
    if (flags.json_output) {
        json j = json_header("scan");
        j["dmax"] = dmax;
        j["kmax"] = kmax;
        j["mode"] = mode_name(mode);
        j["count"] = reports.size();
        j["defective"] = json::array();
        for (const auto& rep : reports) {
            json jr;
            jr["H"] = json_class(rep.H);
            jr["k"] = rep.k;
            jr["N"] = rep.N;
            jr["expected"] = rep.expected;
            jr["actual"] = rep.actual;
            j["defective"].push_back(jr);
        }
        emit(out, j);
    } else {
        std::size_t width = 2;
        for (const auto& rep : reports) width = std::max(width, render_parens(rep.H).size());
        out << "defective k-secant varieties, degree <= " << dmax << ", k <= " << kmax << ":\n";
        for (const auto& rep : reports) {
            std::string h = render_parens(rep.H);
            h.resize(width, ' ');
            out << "  " << h << "  k=" << rep.k << "  N=" << rep.N << "  expected=" << rep.expected
                << "  actual=" << rep.actual << "\n";
        }
        out << "total: " << reports.size() << "\n";
    }
    return 0;
}

// ---- classify ------------------------------------------------------

int cmd_classify(const std::string& surface, Int multiple, Int hsq, Int doubles, const SharedFlags& flags,
                 std::ostream& out) {
    SystemSpec spec;
    if (surface == "k3")
        spec.surface.kind = SurfaceKind::K3;
    else if (surface == "abelian")
        spec.surface.kind = SurfaceKind::Abelian;
    else if (surface == "enriques")
        spec.surface.kind = SurfaceKind::Enriques;
    else
        throw std::invalid_argument("classify: unsupported surface '" + surface +
                                    "' (expected k3, abelian or enriques; plane systems go through "
                                    "`special`; no classification is available for other profiles)");
    spec.base.degree = multiple;
    spec.h_square = hsq;
    spec.doubles = doubles;
    const Verdict v = classify_kodaira_zero(spec);

    if (flags.json_output) {
        json j = json_header("classify");
        j["surface"] = surface;
        j["multiple"] = multiple;
        j["h_square"] = hsq;
        j["doubles"] = doubles;
        j["chi"] = spec.surface.chi();
        j["vdim"] = v.vdim;
        j["edim"] = v.edim;
        j["adim_predicted"] = v.adim_predicted;
        j["special"] = v.special;
        j["dimension_basis"] = "predicted-unverified";
        emit(out, j);
    } else {
        if (spec.surface.kind == SurfaceKind::Abelian)
            out << "special: no (never special on abelian surfaces)\n";
        else if (spec.surface.kind == SurfaceKind::Enriques)
            out << "special: no (never special on enriques surfaces)\n";
        else if (v.special)
            out << "special: yes (K3 with L=2H, H^2=2, 2 double points)\n";
        else
            out << "special: no\n";
        out << "vdim=" << v.vdim << ", edim=" << v.edim << ", adim=" << v.adim_predicted
            << " (predicted, unverified)\n";
    }
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"speciality of linear systems of plane curves through general multiple points"};
    app.name("specialsys");

    SharedFlags flags;
    app.add_flag("--json", flags.json_output, "emit JSON (schema_version 1)");
    app.add_option("--seed", flags.seed, "oracle random seed")->envname("SPECIALSYS_SEED");
    app.add_option("--prime", flags.prime, "oracle field modulus")->envname("SPECIALSYS_PRIME");
    app.add_option("--trials", flags.trials, "oracle trials per query");
    app.add_option("--jobs", flags.jobs, "worker threads for scan and oracle trials");

    std::string system;
    Int doubles = 0;
    bool verify = false;
    std::vector<std::uint64_t> primes;
    Int r = 1, bound = 8, k = 0, dmax = 0, kmax = 0;
    std::string mode = "symbolic";
    std::string surface;
    Int multiple = 1, hsq = 2, kz_doubles = 0;

    CLI::App* vdim_cmd = app.add_subcommand("vdim", "Riemann-Roch virtual dimension of a plane system");
    vdim_cmd->add_option("system", system, "system notation, e.g. \"4; 2^5\"")->required();
    vdim_cmd->add_option("--doubles", doubles, "extra general double points");

    CLI::App* adim_cmd = app.add_subcommand("adim", "actual dimension via the finite-field rank oracle");
    adim_cmd->add_option("system", system, "system notation")->required();
    adim_cmd->add_option("--doubles", doubles, "extra general double points");
    adim_cmd->add_option("--primes", primes, "comma-separated list of moduli to compare")->delimiter(',');

    CLI::App* special_cmd = app.add_subcommand("special", "symbolic speciality verdict for a plane system");
    special_cmd->add_option("system", system, "system notation")->required();
    special_cmd->add_option("--doubles", doubles, "extra general double points");
    special_cmd->add_flag("--verify", verify, "cross-check the verdict against the oracle (exit 3 on mismatch)");

    CLI::App* reduce_cmd = app.add_subcommand("reduce", "reduce a class to standard form with its Cremona trace");
    reduce_cmd->add_option("system", system, "class notation")->required();

    CLI::App* neg_cmd = app.add_subcommand("neg-curves", "enumerate (-1)-classes on r slots");
    neg_cmd->add_option("r", r, "number of slots (1..10)")->required();
    neg_cmd->add_option("--bound", bound, "maximum degree to search");

    CLI::App* secant_cmd = app.add_subcommand("secant", "k-secant variety dimension report");
    secant_cmd->add_option("H", system, "very ample class, e.g. \"2;\"")->required();
    secant_cmd->add_option("--k", k, "secant index")->required();
    secant_cmd->add_option("--mode", mode, "symbolic or oracle");

    CLI::App* scan_cmd = app.add_subcommand("scan", "scan for defective k-secant varieties");
    scan_cmd->add_option("--dmax", dmax, "maximum degree of H")->required();
    scan_cmd->add_option("--kmax", kmax, "maximum secant index")->required();
    scan_cmd->add_option("--mode", mode, "symbolic or oracle");

    CLI::App* classify_cmd = app.add_subcommand("classify", "speciality rules on K3/Abelian/Enriques profiles");
    classify_cmd->add_option("--surface", surface, "k3, abelian or enriques")->required();
    classify_cmd->add_option("--multiple", multiple, "coefficient c of the polarization H");
    classify_cmd->add_option("--hsq", hsq, "self-intersection H^2 (positive even)");
    classify_cmd->add_option("--doubles", kz_doubles, "number of general double points");

    for (CLI::App* sub : {vdim_cmd, adim_cmd, special_cmd, reduce_cmd, neg_cmd, secant_cmd, scan_cmd, classify_cmd})
        sub->fallthrough();
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        err << app.help();
        return 2;
    }

    try {
        if (app.got_subcommand(vdim_cmd)) return cmd_vdim(system, doubles, flags, out);
        if (app.got_subcommand(adim_cmd)) return cmd_adim(system, doubles, primes, flags, out);
        if (app.got_subcommand(special_cmd)) return cmd_special(system, doubles, verify, flags, out, err);
        if (app.got_subcommand(reduce_cmd)) return cmd_reduce(system, flags, out);
        if (app.got_subcommand(neg_cmd)) return cmd_neg_curves(r, bound, flags, out);
        if (app.got_subcommand(secant_cmd)) return cmd_secant(system, k, mode, flags, out);
        if (app.got_subcommand(scan_cmd)) return cmd_scan(dmax, kmax, mode, flags, out);
        if (app.got_subcommand(classify_cmd)) return cmd_classify(surface, multiple, hsq, kz_doubles, flags, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("specialsys");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace specialsys::cli
