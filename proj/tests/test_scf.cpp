#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace clonelab;
using namespace testsupport;

namespace {

Edge E(const Profile& p, const char* a, const char* b) { return {p.require(a), p.require(b)}; }

std::set<CandSet> as_pairs(const std::vector<Edge>& es) {
    std::set<CandSet> s;
    for (auto [a, b] : es) s.insert(bit(a) | bit(b));
    return s;
}

std::vector<CandSet> unordered(const std::vector<Edge>& es) {
    std::vector<CandSet> out;
    for (auto [a, b] : es) out.push_back(bit(a) | bit(b));
    return out;
}

int index_in(const std::vector<Edge>& L, Edge e) {
    return static_cast<int>(std::find(L.begin(), L.end(), e) - L.begin());
}

}  // namespace

TEST_CASE("plurality") {
    const Profile p2 = fixture("P2");
    CHECK(named(p2, pv(p2)) == N({"b"}));
    const Profile q = remove_candidates(p2, S(p2, {"a2"}));
    CHECK(named(q, pv(q)) == N({"a1"}));
    const Profile u = parse_profile("3: c>a>b");
    CHECK(named(u, pv(u)) == N({"c"}));
}

TEST_CASE("STV") {
    const Profile p2 = fixture("P2");
    CHECK(named(p2, stv(p2)) == N({"a1"}));
    const Profile s2 = summarize(p2, {S(p2, {"a1", "a2"}), S(p2, {"b"}), S(p2, {"c"})});
    CHECK(named(s2, stv(s2)) == N({"a1+a2"}));
    const Profile p1 = fixture("P1");
    CHECK(named(p1, stv(p1)) == N({"d"}));
    // parallel universes: a perfectly tied pair keeps both
    const Profile t = parse_profile("1: a>b\n1: b>a");
    CHECK(named(t, stv(t)) == N({"a", "b"}));
}

TEST_CASE("STV with a voter's tie-break") {
    const Profile t = parse_profile("1: a>b\n1: b>a");
    CHECK(named(t, stv_i(t, 1)) == N({"a"}));
    CHECK(named(t, stv_i(t, 2)) == N({"b"}));
    const Profile p2 = fixture("P2");
    CHECK(p2.ranking_names(stv_i_eliminations(p2, 1)) == std::vector<std::string>{"a2", "c", "b", "a1"});
    for (const auto& p : corpus()) {
        for (long i = 1; i <= p.n(); ++i) {
            const CandSet w = stv_i(p, i);
            CHECK(count(w) == 1);
            CHECK((w & stv(p)) == w);
        }
    }
}

TEST_CASE("sigma_i pair order") {
    const Profile p = parse_profile("1: a>b>c");
    CHECK(unordered(sigma_i(p, 1)) == std::vector<CandSet>{S(p, {"a", "b"}), S(p, {"a", "c"}), S(p, {"b", "c"})});
    const Profile q = parse_profile("candidates: a,b,c\n1: c>a>b");
    CHECK(unordered(sigma_i(q, 1)) == std::vector<CandSet>{S(q, {"a", "c"}), S(q, {"b", "c"}), S(q, {"a", "b"})});
    const Profile two = parse_profile("1: a>b");
    CHECK(sigma_i(two, 1).size() == 1);
}

TEST_CASE("priority order") {
    const Profile p8 = fixture("P8");
    const auto L = priority_order(p8, 1);
    CHECK(L.size() == 6);
    // winning directions keep the first voter's pair order, each ahead of its reversal
    CHECK(index_in(L, E(p8, "a", "b")) < index_in(L, E(p8, "a", "c")));
    CHECK(index_in(L, E(p8, "a", "c")) < index_in(L, E(p8, "b", "c")));
    CHECK(index_in(L, E(p8, "a", "b")) < index_in(L, E(p8, "b", "a")));
    CHECK(index_in(L, E(p8, "a", "c")) < index_in(L, E(p8, "c", "a")));
    CHECK(index_in(L, E(p8, "b", "c")) < index_in(L, E(p8, "c", "b")));
    CHECK(L.front() == E(p8, "a", "b"));

    const Profile p3 = fixture("P3");
    CHECK(priority_order(p3, 1).front() == E(p3, "a1", "b"));

    const Profile two = parse_profile("1: a>b");
    CHECK(priority_order(two, 1).front() == E(two, "a", "b"));

    for (const auto& p : corpus()) {
        const auto M = majority_matrix(p);
        const auto Lp = priority_order(p, 1);
        CHECK(Lp.size() == static_cast<std::size_t>(p.m() * (p.m() - 1)));
        for (std::size_t k = 1; k < Lp.size(); ++k)
            CHECK(M(Lp[k - 1].first, Lp[k - 1].second) >= M(Lp[k].first, Lp[k].second));
        CHECK(as_pairs(Lp).size() == static_cast<std::size_t>(p.m() * (p.m() - 1) / 2));
    }
}

TEST_CASE("ranked pairs with a fixed voter") {
    const Profile p8 = fixture("P8");
    CHECK(named(p8, rp_i(p8, 1)) == N({"a"}));
    CHECK(named(p8, rp_i(p8, 2)) == N({"c"}));
    const auto run = rp_i_run(p8, 1);
    CHECK(run.locked == std::vector<Edge>{E(p8, "a", "b"), E(p8, "a", "c"), E(p8, "b", "c")});
    CHECK(p8.ranking_names(run.ranking) == std::vector<std::string>{"a", "b", "c"});
    const Profile u = parse_profile("2: b>c>a");
    CHECK(named(u, rp_i(u, 2)) == N({"b"}));
}

TEST_CASE("ranked pairs, all universes") {
    const Profile p8 = fixture("P8");
    CHECK(named(p8, rp_put(p8)) == N({"a", "b", "c"}));
    const Profile p5 = fixture("P5");
    const Profile s5 = summarize(p5, {S(p5, {"a", "b"}), S(p5, {"c"})});
    CHECK(named(s5, rp_put(s5)) == N({"a+b", "c"}));
    const Profile lin = parse_profile("2: a>b>c\n1: c>b>a");
    CHECK(named(lin, rp_put(lin)) == N({"a"}));
}

TEST_CASE("ranked pairs over every voter's tie-break") {
    const Profile p5 = fixture("P5");
    CHECK(named(p5, rp_n(p5)) == N({"a", "c"}));
    const Profile k = restrict_to(p5, S(p5, {"a", "b"}));
    CHECK(named(k, rp_n(k)) == N({"a", "b"}));
    const Profile u = parse_profile("3: b>a>c");
    CHECK(named(u, rp_n(u)) == N({"b"}));
    for (const auto& p : corpus()) {
        CandSet all = 0;
        for (long i = 1; i <= p.n(); ++i) all |= rp_i(p, i);
        CHECK(rp_n(p) == all);
    }
}

TEST_CASE("strength matrix") {
    const Profile p3 = fixture("P3");
    const auto Sm = strength_matrix(p3);
    const std::vector<std::vector<long>> want{{0, 3, 7, 5}, {3, 0, 7, 5}, {3, 3, 0, 5}, {3, 3, 3, 0}};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (a != b) CHECK(Sm(a, b) == want[a][b]);
    const Profile two = parse_profile("4: a>b");
    CHECK(strength_matrix(two)(0, 1) == 4);
    CHECK(strength_matrix(two)(1, 0) == 0);
    for (const auto& p : corpus_and_fixtures()) {
        const auto St = strength_matrix(p);
        for (int a = 0; a < p.m(); ++a)
            for (int b = 0; b < p.m(); ++b)
                if (a != b) CHECK(St(a, b) == brute_strength(p, a, b));
    }
}

TEST_CASE("beatpath and split cycle") {
    const Profile p3 = fixture("P3");
    CHECK(named(p3, beatpath(p3)) == N({"a1", "a2"}));
    CHECK(named(p3, split_cycle(p3)) == N({"a1", "a2"}));
    const Profile s3 = summarize(p3, {S(p3, {"a1", "a2"}), S(p3, {"b"}), S(p3, {"c"})});
    CHECK(named(s3, beatpath(s3)) == N({"a1+a2"}));
    CHECK(named(s3, split_cycle(s3)) == N({"a1+a2"}));
    const Profile cw = parse_profile("2: b>a>c\n1: a>c>b");
    CHECK(named(cw, beatpath(cw)) == N({"b"}));
    CHECK(named(cw, split_cycle(cw)) == N({"b"}));
    // P1: every defeat of b or c is the weakest edge on some cycle
    const Profile p1 = fixture("P1");
    const auto M1 = majority_matrix(p1);
    CHECK(M1(p1.require("b"), p1.require("c")) == 1);
    CHECK(named(p1, split_cycle(p1)) == N({"b", "c"}));
}

TEST_CASE("split cycle against a cycle oracle") {
    // a is beaten only if some defeat b->a is not the weakest edge on any cycle through it
    for (const auto& p : corpus()) {
        CandSet want = 0;
        for (int a = 0; a < p.m(); ++a) {
            bool beaten = false;
            for (int b = 0; b < p.m(); ++b) {
                const int mba = margin(p, b, a);
                if (b == a || mba <= 0) continue;
                // is there a path a ~> b with every margin >= mba (closing a cycle where b->a is weakest)?
                std::vector<bool> seen(p.m(), false);
                std::vector<int> stack{a};
                seen[a] = true;
                while (!stack.empty()) {
                    const int x = stack.back();
                    stack.pop_back();
                    for (int y = 0; y < p.m(); ++y)
                        if (!seen[y] && margin(p, x, y) >= mba && margin(p, x, y) > 0) seen[y] = true, stack.push_back(y);
                }
                if (!seen[b]) beaten = true;
            }
            if (!beaten) want |= bit(a);
        }
        CHECK(split_cycle(p) == want);
    }
}

TEST_CASE("Smith and Schwartz") {
    const Profile p7 = fixture("P7");
    CHECK(named(p7, smith(p7)) == N({"a1", "a2", "b", "c"}));
    const Profile cw = parse_profile("2: b>a>c\n1: a>c>b");
    CHECK(named(cw, smith(cw)) == N({"b"}));
    CHECK(named(cw, schwartz(cw)) == N({"b"}));
    const Profile p1 = fixture("P1");
    CHECK(named(p1, smith(p1)) == N({"a", "b", "c", "d"}));
    CHECK(named(p1, schwartz(p1)) == N({"a", "b", "c", "d"}));
    const Profile co = parse_profile("1: a>b>c>d\n1: b>a>d>c");
    CHECK(named(co, schwartz(co)) == N({"a", "b"}));
    CHECK(named(co, smith(co)) == N({"a", "b"}));
}

TEST_CASE("Smith and Schwartz match the subset oracles") {
    for (const auto& p : corpus_and_fixtures()) {
        CHECK(smith(p) == brute_smith(p));
        CHECK(schwartz(p) == brute_schwartz(p));
        CHECK((schwartz(p) & smith(p)) == schwartz(p));
    }
}

TEST_CASE("alternative Smith") {
    const Profile p2 = fixture("P2");
    CHECK(named(p2, alt_smith(p2)) == N({"a1"}));
    const Profile s2 = summarize(p2, {S(p2, {"a1", "a2"}), S(p2, {"b"}), S(p2, {"c"})});
    CHECK(named(s2, alt_smith(s2)) == N({"a1+a2"}));
    const Profile cw = parse_profile("2: b>a>c\n1: a>c>b");
    CHECK(named(cw, alt_smith(cw)) == N({"b"}));
    for (const auto& p : corpus()) CHECK((alt_smith(p) & smith(p)) == alt_smith(p));
}

TEST_CASE("uncovered sets") {
    const Profile p3 = fixture("P3");
    CHECK(named(p3, uc_gillies(p3)) == N({"a1", "b", "c"}));
    CHECK(uc_fishburn(p3) == uc_gillies(p3));
    const Profile s3 = summarize(p3, {S(p3, {"a1", "a2"}), S(p3, {"b"}), S(p3, {"c"})});
    CHECK(count(uc_gillies(s3)) == 3);
    const Profile cw = parse_profile("2: b>a>c\n1: a>c>b");
    CHECK(has(uc_gillies(cw), cw.require("b")));
    CHECK(uc_fishburn(cw) == uc_gillies(cw));
}

TEST_CASE("uncovered sets coincide without pairwise ties") {
    for (const auto& p : corpus()) {
        bool ties = false;
        for (int a = 0; a < p.m(); ++a)
            for (int b = 0; b < p.m(); ++b)
                if (a != b && margin(p, a, b) == 0) ties = true;
        if (!ties) CHECK(uc_fishburn(p) == uc_gillies(p));
        // direct covering oracle
        CandSet want = 0;
        for (int a = 0; a < p.m(); ++a) {
            bool covered = false;
            for (int b = 0; b < p.m(); ++b) {
                if (b == a || margin(p, b, a) <= 0) continue;
                bool lc = true;
                for (int c = 0; c < p.m(); ++c)
                    if (margin(p, c, b) > 0 && margin(p, c, a) <= 0) lc = false;
                if (lc) covered = true;
            }
            if (!covered) want |= bit(a);
        }
        CHECK(uc_gillies(p) == want);
        CHECK((uc_gillies(p) & smith(p)) == uc_gillies(p));
    }
}

TEST_CASE("RP_i is the unique strict stack") {
    for (const auto& p : corpus_and_fixtures()) {
        for (long i : {1L, p.n()}) {
            const auto L = priority_order(p, i);
            std::vector<Ranking> stacks;
            for (const auto& r : all_rankings(p.m()))
                if (is_strict_stack(r, L)) stacks.push_back(r);
            REQUIRE(stacks.size() == 1);
            CHECK(rp_i_run(p, i).ranking == stacks.front());
        }
    }
}

TEST_CASE("RP over all universes equals the weak stacks") {
    for (const auto& p : corpus_and_fixtures()) {
        std::set<Ranking> stacks;
        for (const auto& r : all_rankings(p.m()))
            if (is_weak_stack(p, r)) stacks.insert(r);
        CHECK(rp_put_rankings(p) == stacks);
        CandSet tops = 0;
        for (const auto& r : stacks) tops |= bit(r.front());
        CHECK(rp_put(p) == tops);
        CHECK((rp_n(p) & rp_put(p)) == rp_n(p));
    }
}

TEST_CASE("every rule returns a non-empty subset") {
    const std::vector<std::string> ids{"pv", "stv", "rp", "rp_n", "bp", "sc", "smith", "schwartz", "as", "ucg", "ucf",
                                       "rp_i:1", "stv_i:1", "nr", "nr_i:1", "nnr_i:1"};
    for (const auto& p : corpus_and_fixtures())
        for (const auto& id : ids) {
            const CandSet w = resolve_rule(id)(p);
            CHECK(w != 0);
            CHECK((w & ~p.all()) == 0);
        }
}

TEST_CASE("rule ids") {
    CHECK_THROWS_AS(resolve_rule("nope"), RuleError);
    CHECK_THROWS_AS(resolve_rule("rp_i"), RuleError);
    CHECK_THROWS_AS(resolve_rule("pv:2"), RuleError);
    CHECK_THROWS_AS(resolve_rule("rp_i:x"), RuleError);
    const Profile p8 = fixture("P8");
    CHECK_THROWS_AS(resolve_rule("rp_i:9")(p8), ProfileError);
    CHECK(winners(resolve_rule("rp_i:2"), p8) == N({"c"}));
}
