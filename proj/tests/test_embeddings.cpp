#include "k3fib/embeddings.hpp"

#include <gtest/gtest.h>

using namespace k3fib;

namespace {

IntMatrix source_gram(SubKind k)
{
    switch (k) {
    case SubKind::A1: return RootType::A(1).gram();
    case SubKind::A5: return RootType::A(5).gram();
    case SubKind::A5A1: return block_diagonal({RootType::A(5).gram(), RootType::A(1).gram()});
    }
    return {};
}

std::vector<RootType> targets()
{
    std::vector<RootType> out;
    // Large enough that every class count in the catalog has stabilized, small enough for exhaustive search.
    for (int n = 1; n <= 10; ++n) {
        out.push_back(RootType::A(n));
    }
    for (int n = 4; n <= 9; ++n) {
        out.push_back(RootType::D(n));
    }
    for (int n = 6; n <= 8; ++n) {
        out.push_back(RootType::E(n));
    }
    return out;
}

std::size_t count(const std::string& target, SubKind k)
{
    return embedding_catalog(RootType::parse(target), k).size();
}

} // namespace

TEST(Embeddings, CatalogAgreesWithExhaustiveSearch)
{
    for (const auto& t : targets()) {
        for (SubKind k : {SubKind::A1, SubKind::A5, SubKind::A5A1}) {
            std::set<std::string> brute;
            for (const auto& e : bruteforce_embeddings(t, k)) {
                brute.insert(embedding_class_key(t, e.images));
            }
            std::set<std::string> cat;
            for (const auto& e : embedding_catalog(t, k)) {
                cat.insert(embedding_class_key(t, e.images));
            }
            EXPECT_EQ(cat, brute) << sub_kind_name(k) << " in " << t.name();
        }
    }
}

TEST(Embeddings, CatalogImagesAreIsometricAndPrimitive)
{
    for (const auto& t : targets()) {
        for (SubKind k : {SubKind::A1, SubKind::A5, SubKind::A5A1}) {
            for (const auto& e : embedding_catalog(t, k)) {
                EXPECT_EQ(congruence(e.images, t.gram()), source_gram(k)) << sub_kind_name(k) << " in " << t.name();
                EXPECT_TRUE(is_primitive_embedding(e.images)) << sub_kind_name(k) << " in " << t.name();
            }
        }
    }
}

TEST(Embeddings, KnownClassCounts)
{
    EXPECT_EQ(count("D8", SubKind::A5A1), 2u);
    EXPECT_EQ(count("E7", SubKind::A5), 2u);
    EXPECT_EQ(count("D6", SubKind::A5), 2u);
    for (const char* t : {"A7", "A8", "A9", "D9", "E7", "E8"}) {
        EXPECT_EQ(count(t, SubKind::A5A1), 1u) << t;
    }
    for (const char* t : {"A5", "A6", "D4", "D5", "D6", "D7", "E6"}) {
        EXPECT_EQ(count(t, SubKind::A5A1), 0u) << t;
    }
    EXPECT_EQ(count("D4", SubKind::A5), 0u);
    EXPECT_EQ(count("D24", SubKind::A1), 1u);
}

TEST(Embeddings, AssignmentsPlaceRankSix)
{
    for (const auto& l : niemeier_lattices()) {
        for (const auto& a : distribute_assignments(l)) {
            IntMatrix img = a.image(l);
            ASSERT_EQ(img.rows(), 6u);
            EXPECT_EQ(congruence(img, l.root_gram()), source_gram(SubKind::A5A1)) << l.name() << ": " << a.label(l);
        }
    }
}

TEST(Embeddings, UnknownSublatticeThrows)
{
    EXPECT_THROW(parse_sub_kind("A4"), LatticeError);
}
