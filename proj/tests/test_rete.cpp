#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "gs/errors.hpp"
#include "gs/rete.hpp"
#include "oracles.hpp"

using namespace gs;
using namespace gs::testing;

namespace {

struct Fig4 {
    NameDirectory names;
    Label is_in, name, likes_song;
    Label alice, bob, lab_a, lab_b, s1, s2, ctx;

    Fig4() {
        LabelRng rng(100);
        is_in = rng.next();
        name = rng.next();
        likes_song = rng.next();
        alice = rng.next();
        bob = rng.next();
        lab_a = rng.next();
        lab_b = rng.next();
        s1 = rng.next();
        s2 = rng.next();
        ctx = rng.next();
        names.add("isIn", is_in);
        names.add("name", name);
        names.add("likesSong", likes_song);
        names.add("labA", lab_a);
    }

    static constexpr const char* text =
        "SUBSCRIBE ?s\n"
        "WHERE\n"
        "  ?p isIn ?r.\n"
        "  ?r name 'Lab A'.\n"
        "  ?p likesSong ?s";

    Query query() const { return parse_query(text, names); }
};

std::set<Binding> feed_all(ReteNetwork& net, const std::vector<Tuple>& tuples) {
    std::set<Binding> out;
    for (const Tuple& t : tuples)
        for (Binding& b : net.feed(t)) out.insert(std::move(b));
    return out;
}

}  // namespace

TEST_CASE("the sample subscription parses into its three patterns") {
    Fig4 fx;
    Query q = fx.query();
    REQUIRE(q.projected == std::vector<std::string>{"s"});
    REQUIRE(q.patterns.size() == 3);

    CHECK(*as_variable(q.patterns[0].subject) == Variable{"p"});
    CHECK(std::get<Label>(q.patterns[0].predicate) == fx.is_in);
    CHECK(*as_variable(q.patterns[0].object) == Variable{"r"});

    CHECK(*as_variable(q.patterns[1].subject) == Variable{"r"});
    CHECK(std::get<Label>(q.patterns[1].predicate) == fx.name);
    CHECK(std::get<Value>(q.patterns[1].object).as_string() == "Lab A");

    CHECK(*as_variable(q.patterns[2].subject) == Variable{"p"});
    CHECK(std::get<Label>(q.patterns[2].predicate) == fx.likes_song);
    CHECK(*as_variable(q.patterns[2].object) == Variable{"s"});
}

TEST_CASE("grammar corner cases") {
    Fig4 fx;
    // repeated variable within one pattern is legal
    Query q = parse_query("SUBSCRIBE ?x WHERE ?x isIn ?x", fx.names);
    CHECK(q.patterns.size() == 1);

    // trailing dot allowed
    CHECK_NOTHROW(parse_query("SUBSCRIBE ?p WHERE ?p isIn ?r.", fx.names));

    // projected variable must occur somewhere
    CHECK_THROWS_AS(parse_query("SUBSCRIBE ?z WHERE ?a isIn ?b", fx.names), ParseError);

    // unresolvable name carries a position
    try {
        parse_query("SUBSCRIBE ?a WHERE ?a nosuchname ?b", fx.names);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.pos() == 22);
    }

    CHECK_THROWS_AS(parse_query("WHERE ?a isIn ?b", fx.names), ParseError);
    CHECK_THROWS_AS(parse_query("SUBSCRIBE ?a WHERE", fx.names), ParseError);
    CHECK_THROWS_AS(parse_query("SUBSCRIBE ?a WHERE ?a isIn", fx.names), ParseError);
    // UUID literals resolve without the directory
    LabelRng rng(5);
    Label raw = rng.next();
    Query qr = parse_query("SUBSCRIBE ?a WHERE ?a " + raw.to_string() + " ?b", fx.names);
    CHECK(std::get<Label>(qr.patterns[0].predicate) == raw);
}

TEST_CASE("alpha templates wildcard the variables and the context") {
    Fig4 fx;
    auto templates = derive_alpha_templates(fx.query());
    REQUIRE(templates.size() == 3);
    CHECK(is_wildcard(templates[0].subject));
    CHECK(std::get<Label>(templates[0].predicate) == fx.is_in);
    CHECK(is_wildcard(templates[0].object));
    CHECK(is_wildcard(templates[0].context));
    CHECK(std::get<Value>(templates[1].object).as_string() == "Lab A");
    CHECK(std::get<Label>(templates[2].predicate) == fx.likes_song);

    // fully ground pattern -> fully ground template (except context)
    Query ground;
    ground.projected = {"x"};
    TriplePattern p;
    p.subject = fx.alice;
    p.predicate = fx.is_in;
    p.object = fx.lab_a;
    ground.patterns = {p};
    TriplePattern var3;
    var3.subject = Variable{"x"};
    var3.predicate = Variable{"y"};
    var3.object = Variable{"z"};
    ground.patterns.push_back(var3);
    auto ts = derive_alpha_templates(ground);
    CHECK(selectivity_rank(ts[0]) == 3);
    CHECK(selectivity_rank(ts[1]) == 0);
}

TEST_CASE("compile builds the linear topology with the shared-variable joins") {
    Fig4 fx;
    ReteNetwork net(fx.query());
    CHECK(net.alpha_count() == 3);
    CHECK(net.beta_count() == 4);  // BM0 included
    CHECK(net.beta_size(0) == 1);  // the empty binding
    CHECK(net.join_variables(0).empty());
    CHECK(net.join_variables(1) == std::set<std::string>{"r"});
    CHECK(net.join_variables(2) == std::set<std::string>{"p"});

    // single pattern: one AM, join set empty
    Query single = parse_query("SUBSCRIBE ?p WHERE ?p isIn ?r", fx.names);
    ReteNetwork snet(single);
    CHECK(snet.alpha_count() == 1);
    CHECK(snet.join_variables(0).empty());

    // two patterns sharing nothing: cross product
    Query cross = parse_query("SUBSCRIBE ?a WHERE ?a isIn ?b. ?c likesSong ?d", fx.names);
    ReteNetwork cnet(cross);
    CHECK(cnet.join_variables(1).empty());
}

TEST_CASE("feeding the three matching tuples emits exactly one binding, any order") {
    Fig4 fx;
    std::vector<Tuple> tuples = {
        make_tuple(fx.alice, fx.is_in, fx.lab_a, fx.ctx, 1),
        make_tuple(fx.lab_a, fx.name, Value::from_string("Lab A"), fx.ctx, 2),
        make_tuple(fx.alice, fx.likes_song, fx.s1, fx.ctx, 3),
    };
    std::set<Binding> expected = nested_loop_oracle(fx.query(), tuples);
    REQUIRE(expected.size() == 1);
    CHECK(expected.begin()->at("s") == BoundTerm{fx.s1});

    std::sort(tuples.begin(), tuples.end(), [](const Tuple& a, const Tuple& b) {
        return canonical_hash(a) < canonical_hash(b);
    });
    do {
        ReteNetwork net(fx.query());
        std::set<Binding> emitted;
        size_t emissions_before_last = 0;
        for (size_t i = 0; i < tuples.size(); ++i) {
            auto out = net.feed(tuples[i]);
            if (i + 1 < tuples.size()) emissions_before_last += out.size();
            for (Binding& b : out) emitted.insert(std::move(b));
        }
        CHECK(emitted == expected);
        CHECK(emissions_before_last == 0);  // incomplete joins emit nothing
    } while (std::next_permutation(tuples.begin(), tuples.end(),
                                   [](const Tuple& a, const Tuple& b) {
                                       return canonical_hash(a) < canonical_hash(b);
                                   }));
}

TEST_CASE("duplicate feeds emit nothing new") {
    Fig4 fx;
    ReteNetwork net(fx.query());
    Tuple t = make_tuple(fx.alice, fx.is_in, fx.lab_a, fx.ctx, 1);
    CHECK(net.feed(t).empty());
    CHECK(net.alpha_size(0) == 1);
    CHECK(net.feed(t).empty());
    CHECK(net.alpha_size(0) == 1);  // set semantics
}

TEST_CASE("repeated variables inside a pattern require equal bindings") {
    Fig4 fx;
    Query q = parse_query("SUBSCRIBE ?x WHERE ?x isIn ?x", fx.names);
    ReteNetwork net(q);
    CHECK(net.feed(make_tuple(fx.alice, fx.is_in, fx.lab_a, fx.ctx, 1)).empty());
    auto out = net.feed(make_tuple(fx.alice, fx.is_in, fx.alice, fx.ctx, 2));
    REQUIRE(out.size() == 1);
    CHECK(out[0].at("x") == BoundTerm{fx.alice});
}

TEST_CASE("reorder puts the most selective pattern first, keeps connectivity") {
    Fig4 fx;
    Query q = fx.query();
    Query r = reorder_patterns(q);
    REQUIRE(r.patterns.size() == 3);
    // the 'Lab A' pattern (rank 2) leads
    CHECK(std::get<Label>(r.patterns[0].predicate) == fx.name);
    // then the isIn pattern: it shares ?r with the leader, likesSong does not
    CHECK(std::get<Label>(r.patterns[1].predicate) == fx.is_in);
    CHECK(std::get<Label>(r.patterns[2].predicate) == fx.likes_song);

    // a query already in that order is untouched
    CHECK(reorder_patterns(r) == r);

    // single pattern untouched
    Query single = parse_query("SUBSCRIBE ?p WHERE ?p isIn ?r", fx.names);
    CHECK(reorder_patterns(single) == single);
}

TEST_CASE("property: incremental emissions equal the nested-loop oracle") {
    std::mt19937_64 rng(200);
    LabelRng lrng(201);
    Pools pools = make_pools(lrng);

    for (int instance = 0; instance < 60; ++instance) {
        Query q = random_query(rng, pools);
        std::vector<Tuple> tuples;
        size_t n = 20 + rng() % 180;
        for (size_t i = 0; i < n; ++i) tuples.push_back(random_pool_tuple(rng, pools, i));

        std::set<Binding> expected = nested_loop_oracle(q, tuples);

        ReteNetwork net(q);
        CHECK(feed_all(net, tuples) == expected);

        SUBCASE("") {}
        // order independence: a shuffled feed emits the same set
        std::shuffle(tuples.begin(), tuples.end(), rng);
        ReteNetwork net2(q);
        CHECK(feed_all(net2, tuples) == expected);

        // reordering the patterns changes nothing
        ReteNetwork net3(reorder_patterns(q));
        CHECK(feed_all(net3, tuples) == expected);
    }
}

TEST_CASE("property: feeding S then t emits exactly oracle(S+t) minus oracle(S)") {
    std::mt19937_64 rng(300);
    LabelRng lrng(301);
    Pools pools = make_pools(lrng, 6, 3, 1, 2);

    for (int instance = 0; instance < 40; ++instance) {
        Query q = random_query(rng, pools, 3, 3);
        std::vector<Tuple> base;
        for (size_t i = 0; i < 40; ++i) base.push_back(random_pool_tuple(rng, pools, i));
        Tuple extra = random_pool_tuple(rng, pools, 999);

        ReteNetwork net(q);
        feed_all(net, base);
        std::set<Binding> incremental;
        for (Binding& b : net.feed(extra)) incremental.insert(std::move(b));

        std::set<Binding> before = nested_loop_oracle(q, base);
        std::vector<Tuple> with = base;
        with.push_back(extra);
        std::set<Binding> after = nested_loop_oracle(q, with);

        std::set<Binding> expected;
        for (const Binding& b : after)
            if (!before.count(b)) expected.insert(b);
        CHECK(incremental == expected);
    }
}
