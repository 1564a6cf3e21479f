#include "k3fib/k3fib.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace k3fib;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kInput = 3 };

int run_classify(const std::string& format, const std::string& out_path)
{
    const TableFormat fmt = parse_table_format(format);
    const ClassificationTable table = classify_all();
    if (out_path.empty()) {
        write_table(std::cout, table, fmt);
        return kOk;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw InputError("cannot write " + out_path);
    }
    write_table(out, table, fmt);
    return kOk;
}

int run_verify(const std::string& expected_path, const std::string& computed_path)
{
    const std::vector<TableRow> expected =
        expected_path.empty() ? reference_table() : table_rows_from_json(read_json_file(expected_path));
    std::vector<std::string> diff;
    std::size_t count = 0;
    if (computed_path.empty()) {
        const ClassificationTable table = classify_all();
        count = table.records.size();
        diff = compare_table(table, expected);
    } else {
        const auto rows = table_rows_from_json(read_json_file(computed_path));
        count = rows.size();
        diff = compare_table(rows, expected);
    }
    for (const auto& d : diff) {
        std::cout << d << "\n";
    }
    std::cout << (diff.empty() ? "OK" : "MISMATCH") << ": " << count << " computed, " << expected.size()
              << " expected, " << diff.size() << " difference(s)\n";
    return diff.empty() ? kOk : kMismatch;
}

int run_niemeier_list()
{
    for (const auto& l : niemeier_lattices()) {
        std::cout << l.name() << "  roots=" << total_roots(l.root_type()) << "  h=" << l.coxeter_number()
                  << "  glue=" << l.glue_group().to_string() << "\n";
    }
    std::cout << "Leech  roots=0 (excluded)\n";
    return kOk;
}

int run_niemeier_check(const std::string& name)
{
    const NiemeierLattice& l = niemeier_by_name(name);
    auto problems = l.validate();
    for (const auto& p : problems) {
        std::cout << l.name() << ": " << p << "\n";
    }
    if (problems.empty()) {
        std::cout << l.name() << ": even unimodular of rank 24, root system " << type_name(l.root_type()) << "\n";
    }
    return problems.empty() ? kOk : kMismatch;
}

int run_embeddings(const std::string& target, const std::string& sub, bool brute)
{
    const RootType t = RootType::parse(target);
    const SubKind kind = parse_sub_kind(sub);
    const auto list = brute ? bruteforce_embeddings(t, kind) : embedding_catalog(t, kind);
    std::cout << sub_kind_name(kind) << " -> " << t.name() << ": " << list.size() << " class(es)"
              << (brute ? " (exhaustive search)" : "") << "\n";
    for (const auto& e : list) {
        std::cout << "  " << (e.tag.empty() ? "-" : e.tag) << "  " << embedding_class_key(t, e.images) << "\n";
    }
    return kOk;
}

int run_weierstrass(const std::string& path)
{
    const ModelInput in = model_from_json(read_json_file(path));
    Configuration cfg;
    try {
        cfg = analyze_configuration(in.model, in.k3);
    } catch (const LatticeError& e) {
        throw InputError(e.what());
    }
    if (!in.name.empty()) {
        std::cout << in.name << "\n";
    }
    for (const auto& f : cfg.fibers) {
        std::cout << "  " << detail::pad(f.place.name(in.variable), 24) << f.fiber.name() << "\n";
    }
    std::cout << "fibers: " << cfg.summary() << "\n";
    std::cout << "root lattice: " << type_name(cfg.dynkin()) << "\n";
    std::cout << "euler sum: " << cfg.euler_sum << "\n";
    return kOk;
}

int run_height(const std::string& path)
{
    const SectionInput in = sections_from_json(read_json_file(path));
    std::cout << "h(P) = " << to_string(height(in.p, in.chi)) << "\n";
    if (in.q) {
        std::cout << "h(Q) = " << to_string(height(*in.q, in.chi)) << "\n";
        std::cout << "<P,Q> = " << to_string(height_pairing(in.p, *in.q, in.pq, in.chi)) << "\n";
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Elliptic fibrations of the singular K3 surface with transcendental lattice <6> + <2>"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string out_path;
    auto* classify = app.add_subcommand("classify", "Run the Kneser-Nishiyama classification");
    classify->add_option("--format", format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
    classify->add_option("--out", out_path, "Write to this file instead of stdout");

    std::string expected_path;
    std::string computed_path;
    auto* verify = app.add_subcommand("verify-table", "Compare the classification against a reference table");
    verify->add_option("--expected", expected_path, "Reference rows (JSON); defaults to the built-in table");
    verify->add_option("--computed", computed_path, "Compare these rows (JSON) instead of running the classification");

    std::string lattice_name;
    auto* niemeier = app.add_subcommand("niemeier", "Niemeier lattices");
    niemeier->require_subcommand(1);
    auto* nlist = niemeier->add_subcommand("list", "List the 23 lattices with roots");
    auto* ncheck = niemeier->add_subcommand("check", "Check that a lattice is even unimodular with no extra roots");
    ncheck->add_option("name", lattice_name, "Lattice name, e.g. \"A11 E6 D7\"")->required();

    std::string target;
    std::string sub = "A5+A1";
    bool brute = false;
    auto* emb = app.add_subcommand("embeddings", "Embedding classes into an irreducible root lattice");
    emb->add_option("--target", target, "Root lattice, e.g. D8")->required();
    emb->add_option("--sub", sub, "A1, A5 or A5+A1");
    emb->add_flag("--bruteforce", brute, "Enumerate by exhaustive search instead of the catalog");

    std::string model_path;
    auto* weier = app.add_subcommand("weierstrass", "Kodaira fibers of a Weierstrass model");
    weier->require_subcommand(1);
    auto* analyze = weier->add_subcommand("analyze", "Singular fibers and their types");
    analyze->add_option("file", model_path, "Model JSON")->required();

    std::string section_path;
    auto* heightcmd = app.add_subcommand("height", "Height of a section from its fiber components");
    heightcmd->add_option("file", section_path, "Section JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*classify) {
            return run_classify(format, out_path);
        }
        if (*verify) {
            return run_verify(expected_path, computed_path);
        }
        if (*nlist) {
            return run_niemeier_list();
        }
        if (*ncheck) {
            return run_niemeier_check(lattice_name);
        }
        if (*emb) {
            return run_embeddings(target, sub, brute);
        }
        if (*analyze) {
            return run_weierstrass(model_path);
        }
        if (*heightcmd) {
            return run_height(section_path);
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const LatticeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
    return kUsage;
}
