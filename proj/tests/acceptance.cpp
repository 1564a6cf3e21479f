// One PASS/FAIL line per acceptance criterion. Exits 0 once every check has run, whatever the verdicts: the
// report is the output. A nonzero exit means a check itself crashed.

#include "k3fib/k3fib.hpp"
#include "property_checks.hpp"

#include <iostream>

using namespace k3fib;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& why)
    {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + why;
        }
    }
};

void report(int n, const std::string& what, const Verdict& v)
{
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << n << "] " << what << (v.detail.empty() ? "" : ": " + v.detail)
              << "\n";
}

const FibrationRecord* find(const ClassificationTable& t, const std::string& id)
{
    for (const auto& r : t.records) {
        if (r.id == id) {
            return &r;
        }
    }
    return nullptr;
}

Verdict table_regression(const ClassificationTable& t)
{
    Verdict v;
    auto diff = compare_table(t, reference_table());
    v.require(t.records.size() == 52, std::to_string(t.records.size()) + " records");
    for (const auto& d : diff) {
        v.require(false, d);
    }
    for (auto [a, b] : {std::pair<const char*, const char*>{"22", "22(b)"}, {"9", "21"}}) {
        const auto* ra = find(t, a);
        const auto* rb = find(t, b);
        v.require(ra && rb && ra->fingerprint != rb->fingerprint,
                  std::string("#") + a + " and #" + b + " not separated by fingerprint");
    }
    return v;
}

Verdict rank_census(const ClassificationTable& t)
{
    Verdict v;
    std::map<int, std::set<std::string>> by;
    for (const auto& r : t.records) {
        by[r.mw_rank].insert(r.id);
    }
    v.require(by[2].size() == 17, std::to_string(by[2].size()) + " records of rank 2");
    v.require(by[3].size() == 1, std::to_string(by[3].size()) + " records of rank 3");
    v.require(by[0] == std::set<std::string>{"2", "5", "10", "12", "28", "30", "50"}, "extremal set differs");
    return v;
}

Verdict niemeier_checks()
{
    Verdict v;
    v.require(niemeier_lattices().size() == 23, "lattice count");
    for (const auto& l : niemeier_lattices()) {
        for (const auto& p : l.validate()) {
            v.require(false, l.name() + ": " + p);
        }
        Integer disc = 1;
        for (const auto& c : l.components()) {
            disc *= c.discriminant();
        }
        Integer g = l.glue_group().order();
        v.require(g * g == disc, l.name() + ": |L/L_root|^2 != det L_root");
    }
    return v;
}

Verdict embedding_counts()
{
    Verdict v;
    auto count = [&](const char* target, SubKind k, std::size_t want) {
        const RootType t = RootType::parse(target);
        std::set<std::string> classes;
        for (const auto& e : bruteforce_embeddings(t, k)) {
            classes.insert(embedding_class_key(t, e.images));
        }
        v.require(classes.size() == want, sub_kind_name(k) + " in " + target + ": " + std::to_string(classes.size()) +
                                              " classes");
    };
    count("D8", SubKind::A5A1, 2);
    for (const char* t : {"A7", "D9", "A8", "A9"}) {
        count(t, SubKind::A5A1, 1);
    }
    count("E7", SubKind::A5, 2);
    return v;
}

Verdict frame_invariants(const ClassificationTable& t)
{
    Verdict v;
    for (const auto& r : t.records) {
        Integer dn = abs(determinant(r.n_gram));
        Integer root;
        bool square = dn % 12 == 0 && exact_sqrt(dn / 12, root);
        v.require(rank_of(r.n_gram) == 18, r.id + ": rank N");
        v.require(abs(determinant(r.w_gram)) == 12, r.id + ": |det W|");
        v.require(square && root == r.w_index, r.id + ": [W:N] != sqrt(|det N|/12)");
    }
    const auto* r22 = find(t, "22");
    v.require(r22 && r22->w_index == 4, "#22 index");
    v.require(r22 && r22->w_mod_n == AbelianGroup({Integer(2), Integer(2)}), "#22 W/N");
    return v;
}

Verdict weierstrass_models()
{
    Verdict v;
    const std::vector<std::pair<std::string, std::string>> by_summary{
        {"three_i6", "3 I2 + 3 I6"},
        {"two_i1star", "2 I1* + I8 + 2 I1"},
        {"two_i6_i0star", "I4 + 2 I6 + I0* + 2 I1"},
        {"two_i4star", "2 I4* + I2 + 2 I1"},
        {"two_i4star_b", "2 I4* + I2 + 2 I1"}};
    const std::vector<std::pair<std::string, std::string>> by_dynkin{{"two_iii_star", "A1^3+E7^2"},
                                                                      {"two_ii_star", "A1+E8^2"}};
    auto load = [](const std::string& name) {
        auto in = model_from_json(read_json_file(std::string(K3FIB_DATA_DIR) + "/models/" + name + ".json"));
        return analyze_configuration(in.model, false);
    };
    for (const auto& [name, want] : by_summary) {
        auto cfg = load(name);
        v.require(cfg.summary() == want, name + " gives " + cfg.summary());
        v.require(cfg.euler_sum == 24, name + " Euler sum " + std::to_string(cfg.euler_sum));
    }
    for (const auto& [name, want] : by_dynkin) {
        auto cfg = load(name);
        v.require(type_name(cfg.dynkin()) == type_name(parse_type(want)), name + " gives " + type_name(cfg.dynkin()));
        v.require(cfg.euler_sum == 24, name + " Euler sum " + std::to_string(cfg.euler_sum));
    }
    return v;
}

Verdict heights()
{
    Verdict v;
    auto load = [](const std::string& name) {
        return sections_from_json(read_json_file(std::string(K3FIB_DATA_DIR) + "/sections/" + name + ".json"));
    };
    auto p = load("two_i4star_P");
    auto q = load("two_i4star_Q");
    v.require(height(p.p, p.chi) == make_rational(3, 2), "h(P) = " + to_string(height(p.p, p.chi)));
    v.require(sgn(height(q.p, q.chi)) == 0, "h(Q) = " + to_string(height(q.p, q.chi)));
    v.require(checks::torsion_candidates_a7_d9().empty(), "I8 + I5* admits a height-zero section");
    for (int i = 0; i < 8; ++i) {
        const Rational a = make_rational(i * (8 - i), 8) + 1;
        v.require(a != 4 && a + make_rational(5, 4) != 4, "i = " + std::to_string(i) + " solves the #25 equation");
    }
    return v;
}

Verdict properties(const ClassificationTable& t)
{
    Verdict v;
    for (auto err : {checks::complement_rank(7, 200), checks::determinant_multiplicativity(11, 200),
                     checks::discriminant_direct_sum(13, 60), checks::root_count_closed_forms()}) {
        v.require(!err.has_value(), err.value_or(""));
    }
    for (const auto& r : t.records) {
        if (auto bound = torsion_bound(r.n_root)) {
            v.require(r.torsion.embeds_in(*bound), r.id + ": torsion " + r.torsion.to_string() + " exceeds " +
                                                       bound->to_string());
        }
    }
    return v;
}

} // namespace

int main()
{
    const ClassificationTable table = classify_all();
    report(1, "Table regression (52 rows, exact match)", table_regression(table));
    report(2, "Rank census (17 of rank 2, 1 of rank 3, 7 extremal)", rank_census(table));
    report(3, "Niemeier lattices", niemeier_checks());
    report(4, "Embedding class counts by exhaustive search", embedding_counts());
    report(5, "Frame invariants and #22 index", frame_invariants(table));
    report(6, "Weierstrass fiber configurations", weierstrass_models());
    report(7, "Height checks", heights());
    report(8, "Property suites", properties(table));
    return 0;
}
