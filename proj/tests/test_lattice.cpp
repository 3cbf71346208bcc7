#include <gtest/gtest.h>

#include "okb/okb.hpp"
#include "support.hpp"

using namespace okb;

namespace {

bool has_violation(const std::vector<std::string>& v, const std::string& needle)
{
    return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST(Lattice, Intersect)
{
    auto blp1 = builtin_model("blp1");
    EXPECT_EQ(intersect(blp1, {1, 0}, {1, 0}), Rational(1));
    EXPECT_EQ(intersect(blp1, {1, 1}, {0, 1}), Rational(-1));
    auto mum = builtin_model("mumford");
    EXPECT_EQ(intersect(mum, {1, 0}, {0, 1}), Rational(1));
    EXPECT_THROW(intersect(blp1, {1, 0, 0}, {1, 0}), Error);
}

TEST(Lattice, BuiltinsValidate)
{
    for (const auto& m : test::builtin_models()) EXPECT_TRUE(validate_model(m).empty()) << m.name();
    EXPECT_THROW(builtin_model("p2"), Error);
}

TEST(Lattice, ValidateReportsNegativityFlag)
{
    auto m = builtin_model("blp1");
    auto curves = m.curves();
    curves[0].negative = false;
    SurfaceModel bad("bad", m.basis_labels(), m.gram(), curves, m.eff_generators());
    EXPECT_TRUE(has_violation(validate_model(bad), "negativity flag mismatch"));
}

TEST(Lattice, ValidateReportsSignature)
{
    SurfaceModel bad("bad", {"A", "B"}, Matrix::from_rows({{1, 0}, {0, 1}}), {}, {{1, 0}, {0, 1}});
    EXPECT_TRUE(has_violation(validate_model(bad), "signature not (1, rank-1)"));
}

TEST(Lattice, ValidateReportsEveryViolation)
{
    std::vector<CurveDecl> curves{{"X", {0, 0}, false, true}, {"X", {1, 1}, false, true}, {"Y", {-1, 0}, false, true}};
    SurfaceModel bad("bad", {"A", "B"}, Matrix::from_rows({{1, 2}, {0, 1}}), curves, {{1, 0}, {0, 1}});
    auto v = validate_model(bad);
    EXPECT_TRUE(has_violation(v, "not symmetric"));
    EXPECT_TRUE(has_violation(v, "duplicate curve name"));
    EXPECT_TRUE(has_violation(v, "zero class"));
    EXPECT_TRUE(has_violation(v, "not in the cone"));
}

TEST(Lattice, BlowUpFiber)
{
    auto m = blow_up(builtin_model("p1xp1"), PointSpec{{{"F", 1}}});
    EXPECT_EQ(m.rank(), 3u);
    EXPECT_EQ(m.basis_labels().back(), "E1");
    EXPECT_EQ(m.curve("F").cls, (DivisorClass{1, 0, -1}));
    EXPECT_EQ(m.self_intersection(m.curve("F").cls), Rational(-1));
    EXPECT_TRUE(m.curve("F").negative);
    EXPECT_TRUE(validate_model(m).empty());
}

TEST(Lattice, BlowUpGeneralPoint)
{
    auto m = blow_up(builtin_model("mumford"), PointSpec{});
    auto neg = m.negative_curves();
    ASSERT_EQ(neg.size(), 1u);
    EXPECT_EQ(neg[0]->name, "E1");
}

TEST(Lattice, BlowUpBlp1Line)
{
    auto m = blow_up(builtin_model("blp1"), PointSpec{{{"L1", 1}}});
    EXPECT_EQ(m.basis_labels().back(), "E1");
    EXPECT_EQ(m.curve("L1").cls, (DivisorClass{1, -1, -1}));
    EXPECT_EQ(m.self_intersection(m.curve("L1").cls), Rational(-1));
}

TEST(Lattice, BlowUpRejectsUnknownCurve)
{
    try {
        blow_up(builtin_model("blp1"), PointSpec{{{"Q", 1}}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownCurve);
    }
}

TEST(Lattice, BlowUpPreservesPullbackProducts)
{
    for (const auto& m : test::builtin_models()) {
        auto up = blow_up(m, PointSpec{});
        for (std::size_t i = 0; i < m.rank(); ++i)
            for (std::size_t j = 0; j < m.rank(); ++j) {
                auto a = DivisorClass::unit(m.rank(), i), b = DivisorClass::unit(m.rank(), j);
                EXPECT_EQ(up.intersect(a.extended(), b.extended()), m.intersect(a, b));
            }
    }
}

TEST(Lattice, IntersectSymmetric)
{
    test::Gen g(3);
    for (const auto& m : test::builtin_models())
        for (int i = 0; i < 30; ++i) {
            DivisorClass a = g.psef(m) - g.psef(m), b = g.psef(m) - g.psef(m);
            EXPECT_EQ(m.intersect(a, b), m.intersect(b, a));
        }
}

TEST(Lattice, NefCones)
{
    auto mum = builtin_model("mumford");
    EXPECT_EQ(mum.nef_cone().generators(), (std::vector<DivisorClass>{{0, 1}, {1, 0}}));
    auto blp2 = builtin_model("blp2");
    std::vector<DivisorClass> expected{{1, 0, 0}, {1, -1, 0}, {1, 0, -1}};
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(blp2.nef_cone().generators(), expected);
}

TEST(FiberModel, OneOne)
{
    auto fm = build_fiber_model(1, 1);
    EXPECT_EQ(fm.blow_ups, 1);
    EXPECT_EQ(fm.c1.name, "F");
    EXPECT_EQ(fm.c2.name, "E1");
    EXPECT_EQ(fm.fiber, fm.c1.cls + fm.c2.cls);
    EXPECT_EQ(fm.model.intersect(fm.c1.cls, fm.c2.cls), Rational(1));
}

TEST(FiberModel, RejectsNonCoprime)
{
    EXPECT_THROW(build_fiber_model(2, 4), Error);
    EXPECT_THROW(build_fiber_model(0, 1), Error);
}

TEST(FiberModel, DecompositionProperty)
{
    for (int p = 1; p <= 9; ++p)
        for (int q = 1; q <= 9; ++q) {
            if (std::gcd(p, q) != 1) continue;
            auto fm = build_fiber_model(p, q);
            const auto& m = fm.model;
            EXPECT_TRUE(validate_model(m).empty());
            EXPECT_EQ(m.self_intersection(fm.fiber), Rational(0));
            DivisorClass rest = fm.fiber - Rational(p) * fm.c1.cls - Rational(q) * fm.c2.cls;
            EXPECT_TRUE(is_pseudoeffective(m, rest)) << p << "," << q;
            EXPECT_EQ(m.intersect(fm.c1.cls, fm.c2.cls), Rational(1));
            EXPECT_EQ(m.intersect(rest, fm.c1.cls) + Rational(q), Rational(-p) * m.self_intersection(fm.c1.cls));
        }
}

TEST(FiberModel, StepCountFollowsEuclid)
{
    EXPECT_EQ(build_fiber_model(2, 3).blow_ups, 3);
    EXPECT_EQ(build_fiber_model(1, 2).blow_ups, 2);
}

TEST(Positivity, Predicates)
{
    auto mum = builtin_model("mumford");
    EXPECT_TRUE(is_nef(mum, {1, 0}));
    EXPECT_FALSE(is_big(mum, {1, 0}));
    auto blp1 = builtin_model("blp1");
    EXPECT_TRUE(is_big(blp1, {1, 0}));
    EXPECT_FALSE(is_pseudoeffective(blp1, {-1, 0}));
}

TEST(Positivity, Thresholds)
{
    auto blp1 = builtin_model("blp1");
    EXPECT_EQ(sup_threshold(blp1, {1, 0}, {1, -1}, ThresholdMode::Pseudoeffective), ExtendedRational(Rational(1)));
    EXPECT_EQ(sup_threshold(blp1, {1, 0}, {0, 1}, ThresholdMode::Nef), ExtendedRational(Rational(1)));
    auto ell9 = builtin_model("ell9");
    EXPECT_EQ(sup_threshold(ell9, {1, 0}, {1, 0}, ThresholdMode::Pseudoeffective), ExtendedRational(Rational(1)));
    try {
        sup_threshold(blp1, {-1, 0}, {0, 1}, ThresholdMode::Pseudoeffective);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InfeasibleStart);
    }
}

TEST(Positivity, MinimalFaceOfNef)
{
    auto mum = builtin_model("mumford");
    EXPECT_EQ(minimal_face(mum.nef_cone(), {1, 0}), (std::vector<DivisorClass>{{1, 0}}));
    auto blp2 = builtin_model("blp2");
    auto face = minimal_face(blp2.nef_cone(), {2, -1, 0});
    std::sort(face.begin(), face.end());
    EXPECT_EQ(face, (std::vector<DivisorClass>{{1, -1, 0}, {1, 0, 0}}));
    EXPECT_EQ(minimal_face(blp2.nef_cone(), {3, -1, -1}).size(), 3u);
}

TEST(PositivityProperty, ThresholdShift)
{
    test::Gen g(5);
    for (const auto& m : test::builtin_models())
        for (int i = 0; i < 30; ++i) {
            DivisorClass d = g.psef(m);
            const auto& c = g.pick(m.curves()).cls;
            Rational k = g.positive();
            auto a = sup_threshold(m, d, c, ThresholdMode::Pseudoeffective);
            auto b = sup_threshold(m, d + k * c, c, ThresholdMode::Pseudoeffective);
            ASSERT_FALSE(a.is_infinite());
            EXPECT_EQ(b.value(), a.value() + k);
        }
}

TEST(PositivityProperty, NefImpliesPsef)
{
    test::Gen g(6);
    for (const auto& m : test::builtin_models())
        for (int i = 0; i < 30; ++i) {
            DivisorClass d = g.nef(m);
            EXPECT_TRUE(is_nef(m, d));
            EXPECT_TRUE(is_pseudoeffective(m, d));
        }
}
