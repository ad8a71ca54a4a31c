#include <doctest.h>

#include "gw/presets.hpp"
#include "gw/restrict.hpp"

using namespace gw;

namespace {

SiteObject obj_of(const FinGroupoid& g, const std::vector<std::string>& u,
                  const std::vector<std::string>& n)
{
    return make_site_object(g, OpenSubgroupoid{g.objects.mask_of(u), g.arrows.mask_of(n)});
}

} // namespace

TEST_CASE("restrict_object intersects both levels")
{
    FinGroupoid d2 = make_d2();
    RepleteInclusion inc = replete_subgroupoid_named(d2, {"a"});
    SiteObject a = obj_of(d2, {"a", "b"}, {"1a", "1b"});
    SiteObject r = restrict_object(inc, a);
    CHECK(r.sub.u == inc.sub.objects.mask_of({"a"}));
    CHECK(r.sub.n == inc.sub.arrows.mask_of({"1a"}));

    FinGroupoid i2 = make_i2();
    RepleteInclusion ii = replete_subgroupoid_named(i2, {"a"});
    SiteObject whole = obj_of(i2, {"a", "b"}, {"1a", "1b"});
    SiteObject ri = restrict_object(ii, whole);
    CHECK(ri.sub.u == ii.sub.objects.mask_of({"a"}));
    CHECK(ri.sub.n == ii.sub.arrows.mask_of({"1a"}));

    SiteObject empty = make_site_object(d2, OpenSubgroupoid{0, 0});
    SiteObject re = restrict_object(inc, empty);
    CHECK(re.sub == OpenSubgroupoid{0, 0});
}

TEST_CASE("restrict_tset intersects the arrow set")
{
    FinGroupoid d2 = make_d2();
    RepleteInclusion inc = replete_subgroupoid_named(d2, {"a"});
    SiteObject both = obj_of(d2, {"a", "b"}, {"1a", "1b"});

    TSet ident = identity_tset(d2, both);
    TSet r = restrict_tset(inc, ident);
    CHECK(r.t == inc.sub.arrows.mask_of({"1a"}));
    CHECK(r.source.sub == r.target.sub);
    CHECK(r.t == r.source.sub.n); // the restricted identity is an identity
}

TEST_CASE("saturation on I2 blows a point up to the whole groupoid")
{
    FinGroupoid i2 = make_i2();
    RepleteInclusion inc = replete_subgroupoid_named(i2, {"a"});
    SiteObject b = obj_of(inc.sub, {"a"}, {"1a"});
    SiteObject j = saturate_object(inc, b);
    CHECK(j.sub.u == i2.objects.full());
    CHECK(j.sub.n == i2.arrows.full());
}

TEST_CASE("saturation on D2 keeps the complementary identity")
{
    FinGroupoid d2 = make_d2();
    RepleteInclusion inc = replete_subgroupoid_named(d2, {"a"});
    SiteObject b = obj_of(inc.sub, {"a"}, {"1a"});
    SiteObject j = saturate_object(inc, b);
    CHECK(j.sub.u == d2.objects.full());
    CHECK(j.sub.n == d2.arrows.mask_of({"1a", "1b"}));
}

TEST_CASE("saturating along the identity inclusion")
{
    FinGroupoid p2 = make_p2();
    RepleteInclusion inc = replete_subgroupoid(p2, p2.objects.full());
    SiteObject whole = obj_of(inc.sub, {"a", "b"}, {"1a", "1b", "f", "g"});
    SiteObject j = saturate_object(inc, whole);
    CHECK(j.sub.u == p2.objects.full());
    CHECK(j.sub.n == p2.arrows.full());
}

TEST_CASE("the comparison morphism")
{
    FinGroupoid d2 = make_d2();
    RepleteInclusion inc = replete_subgroupoid_named(d2, {"a"});

    SiteObject small = obj_of(d2, {"a"}, {"1a"});
    TSet v = comparison_vhat(inc, small);
    CHECK(v.t == d2.arrows.mask_of({"1a"}));
    CHECK(v.target.sub.u == d2.objects.full());
    CHECK(v.target.sub.n == d2.arrows.mask_of({"1a", "1b"}));

    // a saturation fixed point gets the identity comparison
    FinGroupoid i2 = make_i2();
    RepleteInclusion ii = replete_subgroupoid_named(i2, {"a"});
    SiteObject whole = obj_of(i2, {"a", "b"}, {"1a", "1b"});
    TSet vi = comparison_vhat(ii, whole);
    CHECK(vi.target.sub == whole.sub);
    CHECK(vi.t == whole.sub.n);
}

TEST_CASE("lifting morphisms along D2 and I2 inclusions")
{
    FinGroupoid d2 = make_d2();
    RepleteInclusion inc = replete_subgroupoid_named(d2, {"a"});
    SiteObject both = obj_of(d2, {"a", "b"}, {"1a", "1b"});
    SiteObject ia = restrict_object(inc, both);
    TSet th = identity_tset(inc.sub, ia);
    LiftResult lift = lift_tset(inc, both, both, th);
    CHECK(lift.s == d2.arrows.mask_of({"1a", "1b"}));
    CHECK((lift.s & inc.h1) == inc.arr_mask_to_g(th.t));

    FinGroupoid i2 = make_i2();
    RepleteInclusion ii = replete_subgroupoid_named(i2, {"a"});
    SiteObject whole = obj_of(i2, {"a", "b"}, {"1a", "1b"});
    SiteObject iw = restrict_object(ii, whole);
    TSet thi = identity_tset(ii.sub, iw);
    LiftResult li = lift_tset(ii, whole, whole, thi);
    CHECK(li.s == i2.arrows.full());

    // wrong endpoints are rejected
    SiteObject eobj = make_site_object(inc.sub, OpenSubgroupoid{0, 0});
    TSet wrong{eobj, eobj, 0};
    CHECK_THROWS_AS(lift_tset(inc, both, both, wrong), Error);
}

TEST_CASE("verify_site_restriction on the presets")
{
    FinGroupoid d2 = make_d2();
    SiteFunctorReport r1 = verify_site_restriction(replete_subgroupoid_named(d2, {"a"}));
    CHECK(r1.essentially_surjective);
    CHECK(r1.essentially_full);
    CHECK(r1.functorial);

    FinGroupoid i2 = make_i2();
    SiteFunctorReport r2 = verify_site_restriction(replete_subgroupoid_named(i2, {"a"}));
    CHECK(r2.all_ok());

    FinGroupoid p2 = make_p2();
    SiteFunctorReport r3 = verify_site_restriction(replete_subgroupoid(p2, p2.objects.full()));
    CHECK(r3.all_ok());
}

TEST_CASE("restriction preserves composition on the presets")
{
    for (const FinGroupoid& g : {make_d2(), make_i2(), make_z2()}) {
        for (Mask h0 : replete_subsets(g)) {
            RepleteInclusion inc = replete_subgroupoid(g, h0);
            std::vector<SiteObject> site = site_objects(g);
            for (const SiteObject& a : site)
                for (const SiteObject& b : site)
                    for (const TSet& t1 : enumerate_tsets(g, a, b))
                        for (const SiteObject& c : site)
                            for (const TSet& t2 : enumerate_tsets(g, b, c)) {
                                TSet lhs = restrict_tset(inc, tset_compose(g, t1, t2));
                                TSet rhs = tset_compose(inc.sub, restrict_tset(inc, t1),
                                                        restrict_tset(inc, t2));
                                CHECK(lhs.t == rhs.t);
                                CHECK(lhs.source.sub == rhs.source.sub);
                                CHECK(lhs.target.sub == rhs.target.sub);
                            }
        }
    }
}

TEST_CASE("the m-intersection identity holds exhaustively on small presets")
{
    for (const FinGroupoid& g : {make_z2(), make_d2(), make_i2(), make_p2()})
        for (Mask h0 : replete_subsets(g)) {
            RepleteInclusion inc = replete_subgroupoid(g, h0);
            for (Mask v : g.arrows.opens())
                for (Mask w : g.arrows.opens()) {
                    Mask lhs = g.compose_image(v, w) & inc.h1;
                    Mask rhs = g.compose_image(v & inc.h1, w & inc.h1);
                    CHECK(lhs == rhs);
                    // the composite image of opens is open
                    CHECK(g.arrows.is_open(g.compose_image(v, w)));
                }
        }
}
