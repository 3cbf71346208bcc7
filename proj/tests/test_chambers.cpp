#include <gtest/gtest.h>

#include "okb/okb.hpp"
#include "support.hpp"

using namespace okb;

namespace {

using Names = std::set<std::string>;

std::set<DivisorClass> rays(const std::vector<MinkowskiBasisElement>& basis)
{
    std::set<DivisorClass> out;
    for (const auto& b : basis) out.insert(b.cls);
    return out;
}

struct FlagCase {
    SurfaceModel model;
    AdmissibleFlag flag;
};

FlagCase blp2_flag(DivisorClass c)
{
    return {builtin_model("blp2").with_curve("C", std::move(c)), AdmissibleFlag::general("C")};
}

RationalPolygon reassemble(const FlagCase& fc, const MinkowskiDecomposition& dec)
{
    RationalPolygon acc = RationalPolygon::point({0, 0});
    for (const auto& [b, coef] : dec) acc = minkowski_sum(acc, scale(limiting_body(fc.model, fc.flag, b).polygon, coef));
    return acc;
}

}  // namespace

TEST(Chambers, Signatures)
{
    auto blp2 = builtin_model("blp2");
    EXPECT_EQ(zariski_chamber_signature(blp2, {3, -1, -1}), (ChamberSignature{{}, {}}));
    EXPECT_EQ(zariski_chamber_signature(blp2, {Rational(3, 2), -1, -1}), (ChamberSignature{{"L12"}, {"L12"}}));
    auto blp1 = builtin_model("blp1");
    EXPECT_EQ(zariski_chamber_signature(blp1, {1, 1}), (ChamberSignature{{"E"}, {"E"}}));
    EXPECT_THROW(zariski_chamber_signature(builtin_model("mumford"), {1, 0}), Error);
}

TEST(Chambers, SameStability)
{
    auto blp2 = builtin_model("blp2");
    EXPECT_TRUE(same_stability_chamber(blp2, {3, -1, -1}, {4, -1, -1}));
    auto blp1 = builtin_model("blp1");
    EXPECT_TRUE(same_stability_chamber(blp1, {1, 0}, {1, 1}));
    EXPECT_FALSE(same_stability_chamber(blp1, {2, -1}, {1, 1}));
}

TEST(Chambers, EnumerationBlp2)
{
    auto e = enumerate_zariski_chambers(builtin_model("blp2"));
    std::set<Names> supports;
    for (const auto& r : e.realized) supports.insert(r.support);
    EXPECT_EQ(supports, (std::set<Names>{{}, {"E1"}, {"E2"}, {"E1", "E2"}, {"L12"}}));
    bool rejected = std::any_of(e.unrealized.begin(), e.unrealized.end(),
                                [](const UnrealizedSubset& u) { return u.support == Names{"E1", "L12"}; });
    EXPECT_TRUE(rejected);
}

TEST(Chambers, EnumerationSmall)
{
    EXPECT_EQ(enumerate_zariski_chambers(builtin_model("blp1")).realized.size(), 2u);
    auto mum = enumerate_zariski_chambers(builtin_model("mumford"));
    ASSERT_EQ(mum.realized.size(), 1u);
    EXPECT_TRUE(mum.realized[0].support.empty());
}

TEST(Chambers, BasisBlp2)
{
    auto h = blp2_flag({1, 0, 0});
    EXPECT_EQ(rays(minkowski_basis(h.model, h.flag)),
              (std::set<DivisorClass>{{1, 0, 0}, {1, -1, 0}, {1, 0, -1}, {2, -1, -1}}));
    auto c = blp2_flag({3, -1, -1});
    EXPECT_EQ(rays(minkowski_basis(c.model, c.flag)),
              (std::set<DivisorClass>{{1, 0, 0}, {1, -1, 0}, {1, 0, -1}, {2, -1, -1}, {3, -1, 0}, {3, 0, -1}, {3, -1, -1}}));
}

TEST(Chambers, BasisMumford)
{
    auto m = builtin_model("mumford").with_curve("C", {1, 1});
    EXPECT_EQ(rays(minkowski_basis(m, AdmissibleFlag::general("C"))), (std::set<DivisorClass>{{1, 0}, {0, 1}, {1, 1}}));
}

TEST(Chambers, BasisRejectsSpecialPoint)
{
    auto m = builtin_model("blp2");
    EXPECT_THROW(minkowski_basis(m, AdmissibleFlag::at("E1", {{"L12", 1}})), Error);
}

TEST(Chambers, Decompose)
{
    auto h = blp2_flag({1, 0, 0});
    EXPECT_EQ(minkowski_decompose(h.model, h.flag, {3, -1, -1}),
              (MinkowskiDecomposition{{{1, 0, 0}, 1}, {{2, -1, -1}, 1}}));
    EXPECT_EQ(minkowski_decompose(h.model, h.flag, {1, -1, 0}), (MinkowskiDecomposition{{{1, -1, 0}, 1}}));
    auto mum = builtin_model("mumford").with_curve("C", {1, 0});
    EXPECT_EQ(minkowski_decompose(mum, AdmissibleFlag::general("C"), {2, 3}),
              (MinkowskiDecomposition{{{1, 0}, 2}, {{0, 1}, 3}}));
    try {
        minkowski_decompose(h.model, h.flag, {1, 1, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotNef);
    }
}

TEST(Chambers, ChamberCounts)
{
    auto h = blp2_flag({1, 0, 0});
    EXPECT_EQ(minkowski_chambers(h.model, h.flag).size(), 2u);
    auto c = blp2_flag({3, -1, -1});
    EXPECT_EQ(minkowski_chambers(c.model, c.flag).size(), 6u);
    auto mum = builtin_model("mumford").with_curve("C", {1, 0});
    EXPECT_EQ(minkowski_chambers(mum, AdmissibleFlag::general("C")).size(), 1u);
}

class ChamberProperty : public ::testing::TestWithParam<DivisorClass> {};

TEST_P(ChamberProperty, ShapeConstantOnChambers)
{
    auto fc = blp2_flag(GetParam());
    test::Gen g(401);
    for (const auto& ch : minkowski_chambers(fc.model, fc.flag)) {
        std::vector<RationalPolygon> bodies;
        for (int i = 0; i < 10; ++i)
            bodies.push_back(limiting_body(fc.model, fc.flag, g.combination(ch.rays, 3, true)).polygon);
        for (std::size_t i = 1; i < bodies.size(); ++i)
            EXPECT_TRUE(similar(bodies[0], bodies[i])) << to_string(bodies[0]) << " vs " << to_string(bodies[i]);
    }
}

TEST_P(ChamberProperty, InteriorDecomposesPositively)
{
    auto fc = blp2_flag(GetParam());
    test::Gen g(402);
    for (const auto& ch : minkowski_chambers(fc.model, fc.flag)) {
        std::set<DivisorClass> chamber_rays(ch.rays.begin(), ch.rays.end());
        for (int i = 0; i < 10; ++i) {
            DivisorClass d = g.combination(ch.rays, 3, true);
            auto dec = minkowski_decompose(fc.model, fc.flag, d);
            DivisorClass back = DivisorClass::zero(3);
            for (const auto& [b, coef] : dec) {
                EXPECT_GT(coef, 0);
                EXPECT_TRUE(chamber_rays.count(b)) << format_divisor(b, fc.model);
                back += coef * b;
            }
            EXPECT_EQ(dec.size(), chamber_rays.size());
            EXPECT_EQ(back, d);
            EXPECT_EQ(reassemble(fc, dec), limiting_body(fc.model, fc.flag, d).polygon);
        }
    }
}

TEST_P(ChamberProperty, ReassemblesAnyNefClass)
{
    auto fc = blp2_flag(GetParam());
    test::Gen g(403);
    for (int i = 0; i < 30; ++i) {
        DivisorClass d = g.nef(fc.model);
        auto dec = minkowski_decompose(fc.model, fc.flag, d);
        DivisorClass back = DivisorClass::zero(3);
        for (const auto& [b, coef] : dec) back += coef * b;
        EXPECT_EQ(back, d);
        EXPECT_EQ(reassemble(fc, dec), limiting_body(fc.model, fc.flag, d).polygon);
    }
}

INSTANTIATE_TEST_SUITE_P(Blp2Flags, ChamberProperty,
                         ::testing::Values(DivisorClass{1, 0, 0}, DivisorClass{3, -1, -1}));

TEST(ChamberWitness, SupportEqualsNullLocus)
{
    for (const auto& name : {"blp1", "blp2", "p1xp1", "ell9", "mumford"}) {
        auto m = builtin_model(name);
        for (const auto& r : enumerate_zariski_chambers(m).realized) {
            auto sig = zariski_chamber_signature(m, r.witness);
            EXPECT_EQ(sig.support, r.support) << name;
            EXPECT_EQ(sig.null_locus, r.support) << name;
            EXPECT_EQ(null_locus(m, r.positive), r.support) << name;
        }
    }
}
