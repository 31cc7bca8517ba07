#include "weil/criteria.hpp"
#include "weil/error.hpp"
#include "weil/forge.hpp"
#include "weil/io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace weil;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kDisagreement = 2;

struct InputFile {
    std::string bytes;
    AbelianVarietyDatum datum;
};

InputFile load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    InputFile f{ss.str(), {}};
    f.datum = parse_datum_text(f.bytes);
    return f;
}

// Exit 1 for anything the user can fix in the input, 2 for broken invariants.
int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::InconsistencyDetected:
        case ErrorKind::RankDefect:
        case ErrorKind::ToleranceExceeded:
        case ErrorKind::IllConditioned:
        case ErrorKind::EmbeddingInconsistency:
        case ErrorKind::ClosureFailure:
            return kDisagreement;
        default:
            return kInvalid;
    }
}

OracleOptions oracle_options(const std::string& tolerance, unsigned precision) {
    OracleOptions opt;
    opt.precision = precision;
    opt.tolerance = parse_decimal(tolerance);
    if (opt.tolerance <= 0) throw Error(ErrorKind::InvalidInput, "--tolerance must be positive");
    return opt;
}

std::string oracle_text(const std::string& name, const Json& j) {
    std::ostringstream os;
    if (j.is_string()) {
        os << name << ": " << j.get<std::string>() << "\n";
        return os.str();
    }
    if (name == "wedge") {
        os << "dim W_F = " << j["dim_w_f"] << " ([F:Q] = " << j["deg_f"] << ", N = " << j["dim_v"] << ", r = " << j["r"]
           << ", C(N, r) = " << j["wedge_dim"] << ")\n";
    } else if (name == "hodge-type") {
        os << "hodge-type: " << (j["is_all_hodge"].get<bool>() ? "all Hodge" : "not all Hodge") << "\n";
        for (const auto& c : j["components"])
            os << "  sigma " << c["sigma"] << ": (" << c["p"] << "," << c["q"] << ")  residual "
               << c["residual"].get<std::string>() << "\n";
        const auto& r = j["residuals"];
        os << "  residuals: J^2+I " << r["j_square"].get<std::string>() << ", [J,A] "
           << r["j_commute"].get<std::string>() << ", imaginary " << r["j_imaginary"].get<std::string>()
           << ", bidegree " << r["bidegree_max"].get<std::string>() << "\n";
    } else {
        os << "witness: " << (j["found"].get<bool>() ? "found" : "not found") << " (rank of products "
           << j["products_rank"] << ", with W_F " << j["augmented_rank"] << ")\n";
        const auto& mons = j["monomials"];
        for (size_t b = 0; b < j["coefficients"].size(); ++b) {
            os << "  w_" << b << " =";
            const auto& c = j["coefficients"][b];
            for (size_t k = 0; k < c.size(); ++k) {
                if (c[k].get<std::string>() == "0") continue;
                os << " + (" << c[k].get<std::string>() << ")";
                for (const auto& idx : mons[k]) os << " D" << idx;
            }
            os << "\n";
        }
        if (!j["caveat"].get<std::string>().empty()) os << "  caveat: " << j["caveat"].get<std::string>() << "\n";
    }
    return os.str();
}

int cmd_classify(const std::string& path, const std::string& format, bool oracle, const std::string& tolerance,
                 unsigned precision, unsigned threads) {
    const InputFile in = load(path);
    const ValidationReport v = validate(in.datum);
    if (!v.ok()) {
        std::cerr << "invalid input:\n" << v.summary() << "\n";
        return kInvalid;
    }
    const ClassificationReport report = classify(in.datum, threads);
    Json oracles;
    if (oracle) oracles = oracle_crosscheck(in.datum, report, oracle_options(tolerance, precision));
    if (format == "json") {
        Json doc = {{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
                    {"input_sha256", sha256_hex(in.bytes)},
                    {"report", report_to_json(report)}};
        if (oracle) {
            doc["oracle"] = oracles;
            doc["oracle_settings"] = {{"precision", precision}, {"tolerance", tolerance}};
        }
        std::cout << canonical_dump(doc);
    } else {
        std::cout << report_to_text(report);
        if (oracle) {
            std::cout << "oracle cross-checks (precision " << precision << ", tolerance " << tolerance << "): agree\n";
            for (const char* name : {"wedge", "hodge-type", "witness"})
                std::cout << oracle_text(name, oracles[name == std::string("hodge-type") ? "hodge_type" : name]);
        }
    }
    return kOk;
}

int cmd_example(const std::string& name, uint64_t seed) {
    const Fixture fx = make_fixture(name, seed);
    std::cout << canonical_dump(datum_to_json(fx.datum));
    return kOk;
}

int cmd_oracle(const std::string& which, const std::string& path, const std::string& format,
               const std::string& tolerance, unsigned precision) {
    const InputFile in = load(path);
    const OracleOptions opt = oracle_options(tolerance, precision);
    Json j;
    if (which == "wedge") {
        j = wedge_oracle(in.datum, opt);
    } else if (which == "hodge-type") {
        j = hodge_type_oracle_report(in.datum, opt);
    } else {
        j = witness_oracle(in.datum, opt);
    }
    if (format == "json")
        std::cout << canonical_dump({{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
                                     {"input_sha256", sha256_hex(in.bytes)},
                                     {"oracle", which},
                                     {"result", j}});
    else
        std::cout << oracle_text(which, j);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classify Weil classes on abelian varieties from isogeny-level data"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    std::string format = "text", tolerance = "1e-8";
    unsigned precision = 50;
    const auto add_numeric = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--tolerance", tolerance, "Numeric tolerance for oracle residuals");
        sub->add_option("--precision", precision, "Decimal digits for the complex structure")
            ->check(CLI::Range(30u, 1000u));
    };

    std::string path;
    bool oracle = false;
    unsigned threads = 1;
    auto* classify_cmd = app.add_subcommand("classify", "Validate and classify an input document");
    classify_cmd->add_option("path", path, "Input document")->required();
    classify_cmd->add_flag("--oracle", oracle, "Cross-check with the exterior-algebra oracles");
    classify_cmd->add_option("--threads", threads, "Worker threads for per-factor classification")
        ->check(CLI::Range(1u, 256u));
    add_numeric(classify_cmd);

    std::string name;
    uint64_t seed = 0;
    auto* example_cmd = app.add_subcommand("example", "Print the input document of a built-in example");
    example_cmd->add_option("name", name, "Example name")->required();
    example_cmd->add_option("--seed", seed, "Seed for the fixture search");

    std::string which;
    auto* oracle_cmd = app.add_subcommand("oracle", "Run one exterior-algebra oracle");
    oracle_cmd->add_option("which", which, "wedge, hodge-type or witness")
        ->required()
        ->check(CLI::IsMember({"wedge", "hodge-type", "witness"}));
    oracle_cmd->add_option("path", path, "Input document")->required();
    add_numeric(oracle_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalid;
    }

    try {
        if (*classify_cmd) return cmd_classify(path, format, oracle, tolerance, precision, threads);
        if (*example_cmd) return cmd_example(name, seed);
        return cmd_oracle(which, path, format, tolerance, precision);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kDisagreement;
    }
}
