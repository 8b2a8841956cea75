// hochcomp: exact Hochschild cohomology and Gerstenhaber structure for
// finite-dimensional monomial path algebras.
//
// Subcommands:
//   validate    parse a quiver file, check admissibility, optionally echo
//   basis       list the monomial basis of the algebra
//   resolution  print the minimal resolution's combinatorial supports
//   cohomology  dimensions (and representatives) of HH^n
//   cup n m     cup products of degree-n and degree-m cochains
//   bracket n m Gerstenhaber brackets of degree-n and degree-m cochains
//   verify      run the mathematical self-check suites
//
// Exit codes: 0 success, 1 mathematical verification failure, 2 input error.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hochcomp/cohomology.hpp"
#include "hochcomp/comparison.hpp"
#include "hochcomp/gerstenhaber.hpp"
#include "hochcomp/parse.hpp"
#include "hochcomp/resolution.hpp"

using json = nlohmann::ordered_json;
using namespace hochcomp;

namespace {

struct Options {
    std::string input;
    std::string field = "rational";
    std::string format = "table";
    int max_degree = 4;
    int sample_budget = 200;
    std::uint64_t seed = 12345;
    bool echo = false;
    bool representatives = false;
    int left_degree = 0;
    int right_degree = 0;
    std::vector<std::string> cochain_files;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string base_name(const std::string& path) {
    auto slash = path.find_last_of("/\\");
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

bool is_json(const Options& o) { return o.format == "json"; }

QuiverInput load(const Options& o) { return parse_quiver_text(read_file(o.input)); }

// ---------------------------------------------------------------------- //

int run_validate(const Options& o) {
    QuiverInput in = load(o);
    MonomialAlgebra A = MonomialAlgebra::build(in);
    if (o.echo) {
        std::cout << canonical_text(in);
        return 0;
    }
    int longest = 0;
    for (const Path& p : A.basis()) longest = std::max(longest, p.length());
    if (is_json(o)) {
        json j;
        j["schema"] = 1;
        j["command"] = "validate";
        j["input"] = base_name(o.input);
        j["vertices"] = A.quiver().num_vertices();
        j["arrows"] = A.quiver().num_arrows();
        j["relations"] = static_cast<int>(A.relations().size());
        j["dimension"] = A.dim();
        j["longest_basis_path"] = longest;
        emit(j);
    } else {
        std::cout << "vertices           " << A.quiver().num_vertices() << "\n"
                  << "arrows             " << A.quiver().num_arrows() << "\n"
                  << "relations          " << A.relations().size() << "\n"
                  << "dimension          " << A.dim() << "\n"
                  << "longest basis path " << longest << "\n";
    }
    return 0;
}

int run_basis(const Options& o) {
    MonomialAlgebra A = MonomialAlgebra::build(load(o));
    const Quiver& q = A.quiver();
    if (is_json(o)) {
        json j;
        j["schema"] = 1;
        j["command"] = "basis";
        j["input"] = base_name(o.input);
        j["dimension"] = A.dim();
        json elems = json::array();
        for (int i = 0; i < A.dim(); ++i) {
            const Path& p = A.basis_path(i);
            json e;
            e["id"] = i;
            e["label"] = A.basis_label(i);
            e["source"] = path_source(p) + 1;
            e["target"] = path_target(q, p) + 1;
            e["length"] = p.length();
            elems.push_back(std::move(e));
        }
        j["elements"] = std::move(elems);
        emit(j);
    } else {
        std::cout << "dimension " << A.dim() << "\n";
        std::cout << std::left << std::setw(5) << "id" << std::setw(24) << "label"
                  << std::setw(6) << "from" << std::setw(6) << "to"
                  << "length\n";
        for (int i = 0; i < A.dim(); ++i) {
            const Path& p = A.basis_path(i);
            std::cout << std::left << std::setw(5) << i << std::setw(24) << A.basis_label(i)
                      << std::setw(6) << path_source(p) + 1 << std::setw(6)
                      << path_target(q, p) + 1 << p.length() << "\n";
        }
    }
    return 0;
}

int run_resolution(const Options& o) {
    MonomialAlgebra A = MonomialAlgebra::build(load(o));
    Resolution R(A);
    R.ensure_degree(o.max_degree);
    if (is_json(o)) {
        json j;
        j["schema"] = 1;
        j["command"] = "resolution";
        j["input"] = base_name(o.input);
        j["max_degree"] = o.max_degree;
        json degrees = json::array();
        for (int n = 0; n <= o.max_degree; ++n) {
            json d;
            d["degree"] = n;
            json elems = json::array();
            for (int i = 0; i < R.size(n); ++i) {
                const APElement& e = R.element(n, i);
                json row;
                row["index"] = i;
                row["support"] = path_to_string(A.quiver(), e.support);
                json offs = json::array();
                for (const ChainOcc& c : e.left_chain) offs.push_back(c.offset);
                row["offsets"] = std::move(offs);
                row["label"] = R.label(n, i);
                elems.push_back(std::move(row));
            }
            d["elements"] = std::move(elems);
            degrees.push_back(std::move(d));
        }
        j["degrees"] = std::move(degrees);
        emit(j);
    } else {
        for (int n = 0; n <= o.max_degree; ++n) {
            std::cout << "degree " << n << ": " << R.size(n)
                      << (R.size(n) == 1 ? " element\n" : " elements\n");
            for (int i = 0; i < R.size(n); ++i) {
                const APElement& e = R.element(n, i);
                std::cout << "  " << std::left << std::setw(4) << i
                          << path_to_string(A.quiver(), e.support);
                if (!e.left_chain.empty()) {
                    std::cout << "  offsets ";
                    for (std::size_t k = 0; k < e.left_chain.size(); ++k)
                        std::cout << (k ? "," : "") << e.left_chain[k].offset;
                }
                std::cout << "\n";
            }
        }
    }
    return 0;
}

template <class S>
json cochain_terms_json(Resolution& R, const Cochain<S>& f) {
    const MonomialAlgebra& A = R.algebra();
    json terms = json::array();
    for (const auto& [i, val] : f.values)
        for (const auto& [gid, c] : val) {
            json t;
            t["element"] = R.label(f.degree, i);
            t["coeff"] = scalar_to_string(c);
            t["value"] = A.basis_label(gid);
            terms.push_back(std::move(t));
        }
    return terms;
}

template <class S>
void print_cochain_indented(Resolution& R, const Cochain<S>& f, const std::string& pad) {
    if (f.values.empty()) {
        std::cout << pad << "(zero cochain)\n";
        return;
    }
    std::istringstream lines(cochain_to_text(R, f));
    std::string line;
    while (std::getline(lines, line)) std::cout << pad << line << "\n";
}

template <class S>
int run_cohomology(const Options& o) {
    MonomialAlgebra A = MonomialAlgebra::build(load(o));
    Resolution R(A);
    std::vector<HHResult<S>> results;
    for (int n = 0; n <= o.max_degree; ++n) results.push_back(hochschild<S>(R, n));

    if (is_json(o)) {
        json j;
        j["schema"] = 1;
        j["command"] = "cohomology";
        j["input"] = base_name(o.input);
        j["field"] = o.field;
        j["max_degree"] = o.max_degree;
        json degrees = json::array();
        for (const auto& hh : results) {
            json d;
            d["degree"] = hh.degree;
            d["dim"] = hh.dim;
            d["cochain_dim"] = hh.cochain_dim;
            d["cocycle_dim"] = hh.kernel_dim;
            d["coboundary_dim"] = hh.image_dim;
            if (o.representatives) {
                json reps = json::array();
                for (const auto& f : hh.representatives)
                    reps.push_back(cochain_terms_json(R, f));
                d["representatives"] = std::move(reps);
            }
            degrees.push_back(std::move(d));
        }
        j["degrees"] = std::move(degrees);
        emit(j);
    } else {
        std::cout << "Hochschild cohomology over " << o.field << "\n";
        std::cout << std::left << std::setw(4) << "n" << std::setw(8) << "dim"
                  << std::setw(10) << "cochains" << std::setw(10) << "cocycles"
                  << "coboundaries\n";
        for (const auto& hh : results)
            std::cout << std::left << std::setw(4) << hh.degree << std::setw(8) << hh.dim
                      << std::setw(10) << hh.cochain_dim << std::setw(10) << hh.kernel_dim
                      << hh.image_dim << "\n";
        if (o.representatives) {
            for (const auto& hh : results) {
                if (hh.representatives.empty()) continue;
                std::cout << "\ndegree " << hh.degree << " representatives:\n";
                for (std::size_t k = 0; k < hh.representatives.size(); ++k) {
                    std::cout << "  [" << k << "]\n";
                    print_cochain_indented(R, hh.representatives[k], "    ");
                }
            }
        }
    }
    return 0;
}

template <class S>
int run_product(const Options& o, bool is_cup) {
    MonomialAlgebra A = MonomialAlgebra::build(load(o));
    Resolution R(A);
    Comparison<S> C(R);
    Products<S> P(C);

    int n = o.left_degree, m = o.right_degree;
    int target = is_cup ? n + m : n + m - 1;

    if (o.cochain_files.size() > 2)
        throw input_error("at most two --cochain-file operands are accepted");

    // operands: user-supplied cochains where given, otherwise the computed
    // representatives of the requested degrees
    std::vector<Cochain<S>> left, right;
    std::vector<std::string> left_names, right_names;
    auto load_cochain = [&](const std::string& path, int want) {
        R.ensure_degree(want + 1);
        Cochain<S> f = parse_cochain<S>(R, read_file(path));
        if (f.degree != want)
            throw input_error("cochain file '" + path + "' has degree " +
                              std::to_string(f.degree) + ", want " + std::to_string(want));
        return f;
    };
    if (!o.cochain_files.empty()) {
        left.push_back(load_cochain(o.cochain_files[0], n));
        left_names.push_back(base_name(o.cochain_files[0]));
    } else {
        auto hh = hochschild<S>(R, n);
        left = hh.representatives;
        for (std::size_t k = 0; k < left.size(); ++k)
            left_names.push_back("HH^" + std::to_string(n) + "[" + std::to_string(k) + "]");
    }
    if (o.cochain_files.size() == 2) {
        right.push_back(load_cochain(o.cochain_files[1], m));
        right_names.push_back(base_name(o.cochain_files[1]));
    } else if (o.cochain_files.size() == 1 && n == m) {
        right = left;
        right_names = left_names;
    } else {
        auto hh = hochschild<S>(R, m);
        right = hh.representatives;
        for (std::size_t k = 0; k < right.size(); ++k)
            right_names.push_back("HH^" + std::to_string(m) + "[" + std::to_string(k) + "]");
    }

    HHResult<S> target_hh = hochschild<S>(R, target);
    auto target_basis = hom_basis(R, target);
    auto target_index = hom_basis_index(target_basis);
    const char* op_name = is_cup ? "cup" : "bracket";

    struct Row {
        std::size_t i, j;
        Cochain<S> product;
        std::optional<std::vector<S>> coords;
    };
    std::vector<Row> rows;
    for (std::size_t i = 0; i < left.size(); ++i)
        for (std::size_t j = 0; j < right.size(); ++j) {
            Cochain<S> prod =
                is_cup ? P.cup(left[i], right[j]) : P.bracket(left[i], right[j]);
            auto vec = cochain_to_vector(target_basis, target_index, prod);
            rows.push_back(Row{i, j, std::move(prod), class_coordinates(target_hh, vec)});
        }

    if (is_json(o)) {
        json j;
        j["schema"] = 1;
        j["command"] = op_name;
        j["input"] = base_name(o.input);
        j["field"] = o.field;
        j["left_degree"] = n;
        j["right_degree"] = m;
        j["result_degree"] = target;
        j["result_class_dim"] = target_hh.dim;
        json pairs = json::array();
        for (const Row& r : rows) {
            json p;
            p["left"] = left_names[r.i];
            p["right"] = right_names[r.j];
            if (r.coords) {
                json cs = json::array();
                for (const S& c : *r.coords) cs.push_back(scalar_to_string(c));
                p["class"] = std::move(cs);
            } else {
                p["class"] = nullptr;
            }
            p["terms"] = cochain_terms_json(R, r.product);
            pairs.push_back(std::move(p));
        }
        j["pairs"] = std::move(pairs);
        emit(j);
    } else {
        std::cout << op_name << " of degree-" << n << " and degree-" << m
                  << " cochains over " << o.field << "\n";
        std::cout << "result degree " << target << ", class space dimension "
                  << target_hh.dim << "\n";
        if (rows.empty()) std::cout << "(no operand cochains in these degrees)\n";
        for (const Row& r : rows) {
            std::cout << left_names[r.i] << " " << op_name << " " << right_names[r.j]
                      << ":  class ";
            if (r.coords) {
                std::cout << "[";
                for (std::size_t k = 0; k < r.coords->size(); ++k)
                    std::cout << (k ? ", " : "") << scalar_to_string((*r.coords)[k]);
                std::cout << "]";
            } else {
                std::cout << "(not a cocycle)";
            }
            std::cout << "\n";
            print_cochain_indented(R, r.product, "  ");
        }
    }
    return 0;
}

int run_verify(const Options& o) {
    MonomialAlgebra A = MonomialAlgebra::build(load(o));
    Resolution R(A);
    Comparison<Rational> C(R);

    struct Named {
        std::string name;
        CheckReport report;
    };
    std::vector<Named> checks;
    R.ensure_degree(o.max_degree + 1);
    checks.push_back({"differential-squares-to-zero", verify_complex(R, o.max_degree + 1)});
    checks.push_back({"embedding-chain-map", verify_chain_map_F(C, o.max_degree)});
    checks.push_back({"projection-chain-map",
                      verify_chain_map_G(C, o.max_degree, o.sample_budget, o.seed)});
    checks.push_back({"projection-after-embedding-is-identity",
                      verify_roundtrip(C, o.max_degree)});

    bool all_ok = true;
    for (const Named& c : checks) all_ok = all_ok && c.report.ok;

    if (is_json(o)) {
        json j;
        j["schema"] = 1;
        j["command"] = "verify";
        j["input"] = base_name(o.input);
        j["max_degree"] = o.max_degree;
        j["sample_budget"] = o.sample_budget;
        j["seed"] = o.seed;
        json arr = json::array();
        for (const Named& c : checks) {
            json e;
            e["name"] = c.name;
            e["ok"] = c.report.ok;
            e["checked"] = c.report.checked;
            e["detail"] = c.report.detail;
            arr.push_back(std::move(e));
        }
        j["checks"] = std::move(arr);
        j["ok"] = all_ok;
        emit(j);
    } else {
        for (const Named& c : checks) {
            std::cout << (c.report.ok ? "[ok]   " : "[FAIL] ") << std::left << std::setw(40)
                      << c.name << c.report.checked << " checks";
            if (!c.report.ok) std::cout << "  " << c.report.detail;
            std::cout << "\n";
        }
        std::cout << (all_ok ? "all checks passed" : "verification FAILED") << "\n";
    }
    return all_ok ? 0 : 1;
}

template <class S>
int dispatch_field(const Options& o, const std::string& cmd) {
    if (cmd == "cohomology") return run_cohomology<S>(o);
    if (cmd == "cup") return run_product<S>(o, true);
    if (cmd == "bracket") return run_product<S>(o, false);
    throw invariant_error("unhandled subcommand '" + cmd + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Hochschild cohomology of monomial path algebras"};
    app.require_subcommand(1);
    Options o;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("input", o.input, "quiver description file")->required();
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"table", "json"}))
            ->capture_default_str();
    };
    auto add_field = [&](CLI::App* sub) {
        sub->add_option("--field", o.field, "coefficient field: rational or p:<prime>")
            ->capture_default_str();
    };
    auto add_max_degree = [&](CLI::App* sub) {
        sub->add_option("--max-degree", o.max_degree, "largest cohomological degree")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
    };

    CLI::App* validate = app.add_subcommand("validate", "parse and validate a quiver file");
    add_input(validate);
    add_format(validate);
    validate->add_flag("--echo", o.echo, "print the canonical form of the input file");

    CLI::App* basis = app.add_subcommand("basis", "list the monomial basis");
    add_input(basis);
    add_format(basis);

    CLI::App* resolution = app.add_subcommand("resolution", "print resolution supports");
    add_input(resolution);
    add_format(resolution);
    add_max_degree(resolution);

    CLI::App* cohomology = app.add_subcommand("cohomology", "Hochschild cohomology dimensions");
    add_input(cohomology);
    add_format(cohomology);
    add_field(cohomology);
    add_max_degree(cohomology);
    cohomology->add_flag("--representatives", o.representatives,
                         "print representative cocycles");

    auto add_product = [&](const std::string& name, const std::string& desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("n", o.left_degree, "degree of the left operand")
            ->required()
            ->check(CLI::NonNegativeNumber);
        sub->add_option("m", o.right_degree, "degree of the right operand")
            ->required()
            ->check(CLI::NonNegativeNumber);
        add_input(sub);
        add_format(sub);
        add_field(sub);
        sub->add_option("--cochain-file", o.cochain_files,
                        "use this cochain file instead of computed representatives "
                        "(repeat for the right operand)")
            ->type_size(1);
        return sub;
    };
    add_product("cup", "cup products of cochains");
    add_product("bracket", "Gerstenhaber brackets of cochains");

    CLI::App* verify = app.add_subcommand("verify", "run the mathematical self-checks");
    add_input(verify);
    add_format(verify);
    add_max_degree(verify);
    verify->add_option("--sample-budget", o.sample_budget,
                       "random tensors per degree in the projection check")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    verify->add_option("--seed", o.seed, "seed for all sampling")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        if (cmd == "validate") return run_validate(o);
        if (cmd == "basis") return run_basis(o);
        if (cmd == "resolution") return run_resolution(o);
        if (cmd == "verify") return run_verify(o);
        FieldSpec fs = FieldSpec::parse(o.field);
        if (fs.rational) return dispatch_field<Rational>(o, cmd);
        Fp::set_modulus(fs.p);
        return dispatch_field<Fp>(o, cmd);
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const invariant_error& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected failure: " << e.what() << "\n";
        return 1;
    }
}
