// monogen: local index forms, universal minimal polynomials, k-generator
// systems, and monogenicity searches for finite free algebras.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "monogen/indexform.hpp"
#include "monogen/search.hpp"
#include "monogen/serialize.hpp"

namespace {

using namespace monogen;

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitOrder = 4;
constexpr int kExitResource = 5;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int default_threads() {
    if (const char* env = std::getenv("MONOGEN_THREADS")) {
        const int t = std::atoi(env);
        if (t >= 1) return t;
    }
    return 1;
}

struct Loaded {
    ParsedAlgebra parsed;
    std::string path;
};

Loaded load_algebra(const std::string& path) {
    Loaded l;
    l.path = path;
    l.parsed = algebra_from_string(read_file(path));
    ValidationReport rep = validate(*l.parsed.alg);
    if (!rep.valid()) {
        for (const auto& issue : rep.issues)
            std::cerr << "validation: " << issue.identity << " violated: " << issue.detail << "\n";
        throw std::runtime_error("__validation__");
    }
    return l;
}

std::vector<RingElem> parse_theta(const RingPtr& base, const std::string& arg, int rank) {
    json j;
    if (!arg.empty() && arg[0] == '[') {
        try {
            j = json::parse(arg);
        } catch (const json::exception& e) {
            throw parse_error(std::string("bad --theta JSON: ") + e.what());
        }
    } else {
        j = json::array();
        std::stringstream ss(arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) j.push_back(tok);
    }
    if (!j.is_array() || static_cast<int>(j.size()) != rank)
        throw parse_error("--theta needs exactly " + std::to_string(rank) + " coordinates");
    std::vector<RingElem> coords;
    for (const auto& v : j) coords.push_back(value_from_json(base, v));
    return coords;
}

SearchBox parse_box(const std::string& arg, int rank, bool unitIsFirst) {
    if (arg.empty())  // default box [-10, 10] per scanned variable
        return default_box(rank, unitIsFirst);
    SearchBox box;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) throw parse_error("box ranges are lo:hi");
        box.lo.push_back(std::stoll(tok.substr(0, colon)));
        box.hi.push_back(std::stoll(tok.substr(colon + 1)));
    }
    if (static_cast<int>(box.lo.size()) == rank - 1 && unitIsFirst)
        box.skip_first = true;
    else if (static_cast<int>(box.lo.size()) != rank)
        throw parse_error("box needs " + std::to_string(rank) + " ranges (or " +
                          std::to_string(rank - 1) + " to skip x1 when e1 = 1)");
    return box;
}

std::string minpoly_to_string(const UniversalMinPoly& mp) {
    const int n = mp.degree();
    std::string out = n == 1 ? "t" : "t^" + std::to_string(n);
    for (int i = n - 1; i >= 0; --i) {
        const MultiPoly& c = mp.b[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        std::string s = poly_to_string(c);
        const bool single = c.terms().size() == 1;
        std::string tpart = i == 0 ? "" : (i == 1 ? "*t" : "*t^" + std::to_string(i));
        if (single && !s.empty() && s[0] == '-') {
            out += " - ";
            s = s.substr(1);
            if (i > 0 && s == "1") out += tpart.substr(1);
            else out += s + tpart;
        } else if (single) {
            out += " + ";
            if (i > 0 && s == "1") out += tpart.substr(1);
            else out += s + tpart;
        } else {
            out += " + (" + s + ")" + tpart;
        }
    }
    return out;
}

void emit(const std::string& command, const std::string& input, const std::string& text,
          const json& result, bool jsonMode) {
    if (jsonMode) {
        json out;
        out["command"] = command;
        if (!input.empty()) out["input"] = input;
        out["result"] = result;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << text << "\n";
    }
}

// ---------------------------------------------------------------------------
// Embedded corpus: the worked examples, frozen as canonical outputs
// ---------------------------------------------------------------------------

struct CorpusEntry {
    const char* name;
    const char* algebra;   // algebra file body
    const char* command;   // "index-form" | "obstruct:m" | "search" | "ffsearch:d"
    const char* expected;  // canonical output to diff against
};

// clang-format off
const char* kGaussAlg = R"({"base":{"kind":"Integers"},"rank":2,
  "presentation":{"kind":"monic_quotient","var":"i","poly":[[0,"1"],[2,"1"]]},
  "variableAliases":["a","b"]})";

const char* kDedekindAlg = R"({"base":{"kind":"Integers"},"rank":3,
  "basisNames":["1","beta","gamma"],
  "presentation":{"kind":"order",
    "ambientPoly":[[0,"-8"],[1,"-2"],[2,"-1"],[3,"1"]],
    "basisRows":[["1","0","0"],["0","1/2","1/2"],["0","0","1"]]},
  "variableAliases":["a","b","c"]})";

const char* kSqrt23Alg = R"({"base":{"kind":"Integers"},"rank":4,
  "basisNames":["1","sqrt2","sqrt3","sqrt6"],
  "presentation":{"kind":"structure_constants",
    "c":[[["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]],
         [["0","1","0","0"],["2","0","0","0"],["0","0","0","1"],["0","0","2","0"]],
         [["0","0","1","0"],["0","0","0","1"],["3","0","0","0"],["0","3","0","0"]],
         [["0","0","0","1"],["0","0","2","0"],["0","3","0","0"],["6","0","0","0"]]],
    "unitCoords":["1","0","0","0"]},
  "variableAliases":["a","b","c","d"]})";

const char* kMaxOrderAlg = R"({"base":{"kind":"Integers"},"rank":4,
  "presentation":{"kind":"monic_quotient","var":"r","poly":[[0,"1"],[2,"-4"],[4,"1"]]},
  "variableAliases":["a","b","c","d"]})";

const char* kCbrt175Alg = R"({"base":{"kind":"Integers"},"rank":3,
  "basisNames":["1","alpha","beta"],
  "presentation":{"kind":"structure_constants",
    "c":[[["1","0","0"],["0","1","0"],["0","0","1"]],
         [["0","1","0"],["0","0","5"],["35","0","0"]],
         [["0","0","1"],["35","0","0"],["0","7","0"]]],
    "unitCoords":["1","0","0"]},
  "variableAliases":["a","b","c"]})";

const char* kInseparableAlg = R"({"base":{"kind":"FractionField","base":{"kind":"PolyRing","base":{"kind":"IntegersMod","modulus":"3"},"var":"alpha"}},
  "rank":3,
  "presentation":{"kind":"monic_quotient","var":"beta","poly":[[0,{"num":[[1,"2"]],"den":[[0,"1"]]}],[3,{"num":[[0,"1"]],"den":[[0,"1"]]}]]},
  "variableAliases":["a","b","c"]})";

const char* kFunctionFieldAlg = R"({"base":{"kind":"PolyRing","base":{"kind":"IntegersMod","modulus":"3"},"var":"alpha"},
  "rank":3,
  "presentation":{"kind":"monic_quotient","var":"beta","poly":[[0,[[1,"2"]]],[3,[[0,"1"]]]]},
  "variableAliases":["a","b","c"]})";

const char* kSplit3QAlg = R"({"base":{"kind":"Rationals"},"rank":3,"presentation":{"kind":"split"},
  "variableAliases":["x1","x2","x3"]})";

const char* kJet6Alg = R"({"base":{"kind":"Integers"},"rank":6,"presentation":{"kind":"jet"},
  "variableAliases":["x1","x2","x3","x4","x5","x6"]})";

const CorpusEntry kCorpus[] = {
    {"quadratic-index-form", kGaussAlg, "index-form", "b"},
    {"dedekind-index-form", kDedekindAlg, "index-form",
     "-2*b^3 - 15*b^2*c - 31*b*c^2 - 20*c^3"},
    {"sqrt2-sqrt3-order-index-form", kSqrt23Alg, "index-form",
     "-8*b^4*c^2 + 16*b^4*d^2 + 12*b^2*c^4 - 48*b^2*d^4 - 36*c^4*d^2 + 72*c^2*d^4"},
    {"maximal-order-index-form", kMaxOrderAlg, "index-form",
     "b^6 + 20*b^5*d - 8*b^4*c^2 + 159*b^4*d^2 - 88*b^3*c^2*d + 632*b^3*d^3 + 12*b^2*c^4 - "
     "336*b^2*c^2*d^2 + 1279*b^2*d^4 + 48*b*c^4*d - 472*b*c^2*d^3 + 1140*b*d^5 + 12*c^4*d^2 - "
     "104*c^2*d^4 + 225*d^6"},
    {"cbrt175-index-form", kCbrt175Alg, "index-form", "5*b^3 - 7*c^3"},
    {"inseparable-index-form", kInseparableAlg, "index-form", "b^3 + (2*alpha)*c^3"},
    {"function-field-index-form", kFunctionFieldAlg, "index-form", "b^3 + (2*alpha)*c^3"},
    {"split3-vandermonde", kSplit3QAlg, "index-form",
     "-x1^2*x2 + x1^2*x3 + x1*x2^2 - x1*x3^2 - x2^2*x3 + x2*x3^2"},
    {"jet6-index-form", kJet6Alg, "index-form", "x2^15"},
    {"dedekind-obstruction-mod-2", kDedekindAlg, "obstruct:2", "obstructed"},
    {"cbrt175-obstruction-mod-7", kCbrt175Alg, "obstruct:7", "obstructed"},
    {"gauss-obstruction-mod-2", kGaussAlg, "obstruct:2", "inconclusive"},
    {"gauss-box-search", kGaussAlg, "search:-3:3", "(-1) -> -1|(1) -> 1"},
    {"function-field-search-deg1", kFunctionFieldAlg, "ffsearch:1", "(1,0) -> 1|(2,0) -> 2"},
};
// clang-format on

int run_corpus() {
    int failures = 0;
    for (const auto& entry : kCorpus) {
        std::string got;
        try {
            ParsedAlgebra parsed = algebra_from_string(entry.algebra);
            const std::string cmd(entry.command);
            if (cmd == "index-form") {
                got = poly_to_string(local_index_form(parsed.alg, parsed.aliases).poly);
            } else if (cmd.rfind("obstruct:", 0) == 0) {
                auto cert = modular_obstruction(parsed.alg, Int(cmd.substr(9)));
                got = cert.verdict == ObstructionVerdict::Obstructed ? "obstructed" : "inconclusive";
            } else if (cmd.rfind("search:", 0) == 0) {
                SearchBox box = parse_box(cmd.substr(7), parsed.alg->rank, parsed.alg->unit_is_first);
                auto rep = box_search(parsed.alg, box);
                for (std::size_t i = 0; i < rep.hits.size(); ++i) {
                    if (i) got += "|";
                    got += "(";
                    for (std::size_t k = 0; k < rep.hits[i].coords.size(); ++k)
                        got += (k ? "," : "") + rep.hits[i].coords[k].str();
                    got += ") -> " + ring_to_string(rep.hits[i].value);
                }
            } else if (cmd.rfind("ffsearch:", 0) == 0) {
                auto rep = function_field_search(parsed.alg, std::stoi(cmd.substr(9)));
                for (std::size_t i = 0; i < rep.hits.size(); ++i) {
                    if (i) got += "|";
                    got += "(";
                    for (std::size_t k = 0; k < rep.hits[i].coord_values.size(); ++k)
                        got += (k ? "," : "") + ring_to_string(rep.hits[i].coord_values[k]);
                    got += ") -> " + ring_to_string(rep.hits[i].value);
                }
            }
        } catch (const std::exception& e) {
            got = std::string("exception: ") + e.what();
        }
        if (got == entry.expected) {
            std::cout << "[ok] " << entry.name << "\n";
        } else {
            std::cout << "[FAIL] " << entry.name << "\n  expected: " << entry.expected
                      << "\n  got:      " << got << "\n";
            ++failures;
        }
    }
    std::cout << (failures ? "corpus: FAILURES" : "corpus: all examples match") << "\n";
    return failures ? kExitOther : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"monogen: index forms and monogenicity of finite free algebras"};
    app.require_subcommand(1);

    std::string file, thetaArg, thetasArg, boxArg, format = "text";
    bool normalize = false, force = false;
    int kGen = 2;
    long long modulus = 2;
    int degreeBound = 1;
    int threads = default_threads();

    auto add_common = [&](CLI::App* cmd, bool needsFile = true) {
        if (needsFile) cmd->add_option("file", file, "algebra description file")->required();
        cmd->add_option("--format", format, "output format: text | json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* cValidate = app.add_subcommand("validate", "check the algebra axioms");
    add_common(cValidate);

    CLI::App* cIndexForm = app.add_subcommand("index-form", "print the local index form");
    add_common(cIndexForm);
    cIndexForm->add_flag("--normalize", normalize, "force a positive leading coefficient (ZZ/QQ)");

    CLI::App* cMinPoly = app.add_subcommand("min-poly", "print the universal minimal polynomial");
    add_common(cMinPoly);

    CLI::App* cCheck = app.add_subcommand("check", "test whether theta is a monogenerator");
    add_common(cCheck);
    cCheck->add_option("--theta", thetaArg, "coordinates of theta")->required();

    CLI::App* cMinors = app.add_subcommand("minors", "print the k-generator minor system");
    add_common(cMinors);
    cMinors->add_option("--k", kGen, "number of generators")->required();
    cMinors->add_flag("--force", force, "override the minor-count resource guard");

    CLI::App* cCheckK = app.add_subcommand("check-k", "test whether a tuple generates");
    add_common(cCheckK);
    cCheckK->add_option("--thetas", thetasArg, "semicolon-separated coordinate vectors")->required();

    CLI::App* cSearch = app.add_subcommand("search", "exhaustive box search over ZZ");
    add_common(cSearch);
    cSearch->add_option("--box", boxArg, "per-variable inclusive ranges lo:hi,lo:hi,... (default -10:10)");
    cSearch->add_option("--threads", threads, "worker count (default MONOGEN_THREADS or 1)");

    CLI::App* cObstruct = app.add_subcommand("obstruct", "modular obstruction certificate");
    add_common(cObstruct);
    cObstruct->add_option("--mod", modulus, "modulus m >= 2")->required();

    CLI::App* cMinIndex = app.add_subcommand("min-index", "box-relative minimal |index|");
    add_common(cMinIndex);
    cMinIndex->add_option("--box", boxArg, "per-variable inclusive ranges lo:hi,... (default -10:10)");
    cMinIndex->add_option("--threads", threads, "worker count");

    CLI::App* cSearchFF = app.add_subcommand("search-ff", "function-field search over F_p[alpha]");
    add_common(cSearchFF);
    cSearchFF->add_option("--degree", degreeBound, "coordinate degree bound")->required();

    CLI::App* cCorpus = app.add_subcommand("corpus", "run the embedded example corpus");
    add_common(cCorpus, false);

    CLI11_PARSE(app, argc, argv);
    const bool jsonMode = format == "json";

    try {
        if (cCorpus->parsed()) return run_corpus();

        if (cValidate->parsed()) {
            Loaded l = load_algebra(file);  // throws on invalid
            emit("validate", file, "valid", json{{"valid", true}}, jsonMode);
            return kExitOk;
        }
        if (cIndexForm->parsed()) {
            Loaded l = load_algebra(file);
            IndexForm f = local_index_form(l.parsed.alg, l.parsed.aliases);
            MultiPoly p = normalize ? poly_normalize_sign(f.poly) : f.poly;
            const std::string s = poly_to_string(p);
            emit("index-form", file, s,
                 json{{"poly", s}, {"degree", f.expected_degree}, {"x1Free", f.unit_is_first_basis_vector}},
                 jsonMode);
            return kExitOk;
        }
        if (cMinPoly->parsed()) {
            Loaded l = load_algebra(file);
            UniversalMinPoly mp = universal_min_poly(l.parsed.alg, l.parsed.aliases);
            const std::string s = minpoly_to_string(mp);
            json coeffs = json::array();
            for (const auto& b : mp.b) coeffs.push_back(poly_to_string(b));
            emit("min-poly", file, s, json{{"poly", s}, {"coefficients", coeffs}}, jsonMode);
            return kExitOk;
        }
        if (cCheck->parsed()) {
            Loaded l = load_algebra(file);
            std::vector<RingElem> coords = parse_theta(l.parsed.alg->base, thetaArg, l.parsed.alg->rank);
            IndexForm f = local_index_form(l.parsed.alg, l.parsed.aliases);
            RingElem v = index_value(f, coords);
            const bool mono = ring_is_unit(v);
            const std::string s = mono
                                      ? "unit index value " + ring_to_string(v) + ": monogenerator"
                                      : "non-unit index value " + ring_to_string(v) + ": not a monogenerator";
            emit("check", file, s, json{{"indexValue", ring_to_string(v)}, {"monogenerator", mono}}, jsonMode);
            return kExitOk;
        }
        if (cMinors->parsed()) {
            Loaded l = load_algebra(file);
            KGenSystem sys = k_gen_system(l.parsed.alg, kGen, l.parsed.aliases, force);
            std::string text;
            json minors = json::array();
            for_each_minor(sys, [&](const std::vector<std::size_t>& idx, MultiPoly det) {
                std::string cols;
                for (std::size_t i = 0; i < idx.size(); ++i) {
                    cols += (i ? " " : "") + std::string("(");
                    const auto& mono = sys.column_monomials[idx[i]];
                    for (std::size_t j = 0; j < mono.size(); ++j)
                        cols += (j ? "," : "") + std::to_string(mono[j]);
                    cols += ")";
                }
                const std::string d = poly_to_string(det);
                text += "columns " + cols + ": " + d + "\n";
                minors.push_back(json{{"columns", cols}, {"det", d}});
                return true;
            });
            if (!text.empty()) text.pop_back();
            emit("minors", file, text, json{{"k", kGen}, {"minors", minors}}, jsonMode);
            return kExitOk;
        }
        if (cCheckK->parsed()) {
            Loaded l = load_algebra(file);
            std::vector<std::vector<RingElem>> tuples;
            std::stringstream ss(thetasArg);
            std::string tok;
            while (std::getline(ss, tok, ';'))
                tuples.push_back(parse_theta(l.parsed.alg->base, tok, l.parsed.alg->rank));
            std::vector<std::size_t> witness;
            const bool gen = is_k_generating(l.parsed.alg, tuples, &witness);
            std::string s = gen ? "generating tuple" : "not a generating tuple";
            if (gen) {
                s += " (witness minor columns";
                for (auto c : witness) s += " " + std::to_string(c);
                s += ")";
            }
            emit("check-k", file, s, json{{"generating", gen}}, jsonMode);
            return kExitOk;
        }
        if (cSearch->parsed()) {
            Loaded l = load_algebra(file);
            SearchBox box = parse_box(boxArg, l.parsed.alg->rank, l.parsed.alg->unit_is_first);
            SearchReport rep = box_search(l.parsed.alg, box, threads);
            std::cerr << "elapsed_ms " << rep.elapsed_ms << "\n";
            emit("search", file, report_to_text(rep), report_to_json(rep), jsonMode);
            return kExitOk;
        }
        if (cObstruct->parsed()) {
            Loaded l = load_algebra(file);
            auto cert = modular_obstruction(l.parsed.alg, Int(modulus));
            std::string s;
            if (cert.verdict == ObstructionVerdict::Obstructed) {
                s = "obstructed: non-monogenic over ℤ";
            } else {
                s = "inconclusive: residues (";
                for (std::size_t i = 0; i < cert.witness->size(); ++i)
                    s += (i ? "," : "") + (*cert.witness)[i].str();
                s += ") reach ±1 mod " + cert.modulus.str();
            }
            emit("obstruct", file, s,
                 json{{"modulus", cert.modulus.str()},
                      {"verdict", cert.verdict == ObstructionVerdict::Obstructed ? "obstructed" : "inconclusive"},
                      {"residuesChecked", cert.residues_checked},
                      {"digest", cert.residue_table_digest}},
                 jsonMode);
            return kExitOk;
        }
        if (cMinIndex->parsed()) {
            Loaded l = load_algebra(file);
            SearchBox box = parse_box(boxArg, l.parsed.alg->rank, l.parsed.alg->unit_is_first);
            Int m = minimal_index_scan(l.parsed.alg, box, threads);
            emit("min-index", file, "box minimum |index| = " + m.str(), json{{"boxMinimum", m.str()}},
                 jsonMode);
            return kExitOk;
        }
        if (cSearchFF->parsed()) {
            Loaded l = load_algebra(file);
            SearchReport rep = function_field_search(l.parsed.alg, degreeBound);
            std::cerr << "elapsed_ms " << rep.elapsed_ms << "\n";
            emit("search-ff", file, report_to_text(rep), report_to_json(rep), jsonMode);
            return kExitOk;
        }
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const not_an_order_error& e) {
        std::cerr << "order error: " << e.what() << "\n";
        return kExitOrder;
    } catch (const resource_error& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::runtime_error& e) {
        if (std::string(e.what()) == "__validation__") return kExitValidation;
        std::cerr << "error: " << e.what() << "\n";
        return kExitOther;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOther;
    }
    return kExitOther;
}
