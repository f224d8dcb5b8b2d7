#include "dga_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ainfty;
using testutil::elem;

namespace {
Field<Rat> Q;

struct Fix {
    testutil::BuiltDga<Rat> heis = testutil::make_heis(Q);
    const GradedSpace<Rat>* sp = heis.space.get();
    const AInfinity<Rat>& A = heis.alg;
};
}  // namespace

TEST_CASE_METHOD(Fix, "element degree and bar involution") {
    auto x1 = elem(sp, "x1");
    CHECK(x1.degree() == 0);
    CHECK(elem(sp, "1").degree() == -1);
    CHECK(elem(sp, "x1x2y").degree() == 2);
    auto mixed = x1 + elem(sp, "x1x2");
    CHECK_FALSE(mixed.degree());
    CHECK(elem(sp, "1").bar() == -elem(sp, "1"));
    CHECK(x1.bar() == x1);
}

TEST_CASE_METHOD(Fix, "eval is multilinear and sign-free") {
    const MultiMap<Rat>* b1 = A.op(1);
    const MultiMap<Rat>* b2 = A.op(2);
    REQUIRE(b1);
    REQUIRE(b2);

    // eval(b_1, [0]) = 0 and eval(m, [2a]) = 2 eval(m, [a])
    CHECK(b1->eval({Element<Rat>(sp)}).is_zero());
    auto y = elem(sp, "y");
    CHECK(b1->eval({y * Q.from_long(2)}) == b1->eval({y}) * Q.from_long(2));

    // structure constants of the shifted exterior product
    CHECK(b2->eval({elem(sp, "x1"), elem(sp, "x2")}) == elem(sp, "x1x2"));
    CHECK(b2->eval({elem(sp, "x2"), elem(sp, "x1")}) == -elem(sp, "x1x2"));
    CHECK(b1->eval({y}) == elem(sp, "x1x2"));
    // unit has paper degree -1, so b_2(1, a) = -a
    CHECK(b2->eval({elem(sp, "1"), y}) == -y);
    CHECK(b2->eval({y, elem(sp, "1")}) == y);

    CHECK_THROWS_AS(b2->eval({y}), std::invalid_argument);
}

TEST_CASE_METHOD(Fix, "degree contract is enforced at construction") {
    MultiMap<Rat> m(sp, sp, 1, 1);
    CHECK_THROWS_AS(m.set({sp->index("x1")}, elem(sp, "x1")), std::invalid_argument);  // needs degree 1
    CHECK_NOTHROW(m.set({sp->index("x1")}, elem(sp, "x1x2")));
}

TEST_CASE_METHOD(Fix, "apply_tensor_slot carries the Koszul sign") {
    const MultiMap<Rat>* b1 = A.op(1);
    int y = sp->index("y"), one = sp->index("1");

    // length-1 word, r = 0, |map| = 1: sign +1
    auto out = apply_tensor_slot(*b1, *sp, {y}, 0);
    CHECK(out == BarElement<Rat>::word(sp, {sp->index("x1x2")}, Q.one()));

    // odd prefix (the unit has paper degree -1): global sign -1
    auto out2 = apply_tensor_slot(*b1, *sp, {one, y}, 1);
    CHECK(out2 == BarElement<Rat>::word(sp, {one, sp->index("x1x2")}, -Q.one()));

    // [y|y], m = b_1, r = 1: |y| = 0 even, sign +1
    auto out3 = apply_tensor_slot(*b1, *sp, {y, y}, 1);
    CHECK(out3 == BarElement<Rat>::word(sp, {y, sp->index("x1x2")}, Q.one()));

    CHECK_THROWS_AS(apply_tensor_slot(*b1, *sp, {y}, 1), std::out_of_range);
}

TEST_CASE_METHOD(Fix, "bar coderivation on short words") {
    auto ops = A.op_ptrs();
    int y = sp->index("y");
    auto x = BarElement<Rat>::word(sp, {y}, Q.one());
    CHECK(bar_coderivation(ops, x) == BarElement<Rat>::word(sp, {sp->index("x1x2")}, Q.one()));

    std::vector<const MultiMap<Rat>*> none;
    CHECK(bar_coderivation(none, x).is_zero());
}

TEST_CASE_METHOD(Fix, "comultiplication splits words") {
    int a = sp->index("x1"), b = sp->index("x2"), c = sp->index("y");
    auto w1 = BarElement<Rat>::word(sp, {a}, Q.one());
    CHECK(comultiply(w1).empty());

    auto w2 = BarElement<Rat>::word(sp, {a, b}, Q.one());
    auto sp2 = comultiply(w2);
    REQUIRE(sp2.size() == 1);
    CHECK(std::get<0>(sp2[0]) == TensorWord{a});
    CHECK(std::get<1>(sp2[0]) == TensorWord{b});

    auto w3 = BarElement<Rat>::word(sp, {a, b, c}, Q.one());
    auto sp3 = comultiply(w3);
    REQUIRE(sp3.size() == 2);
    CHECK(std::get<0>(sp3[0]) == TensorWord{a});
    CHECK(std::get<1>(sp3[0]) == TensorWord{b, c});
    CHECK(std::get<0>(sp3[1]) == TensorWord{a, b});
    CHECK(std::get<1>(sp3[1]) == TensorWord{c});
}

TEST_CASE_METHOD(Fix, "coderivation law against the comultiplication") {
    // Δ∘b = (1⊗b + b⊗1)∘Δ with Koszul signs, checked exactly per word
    auto ops = A.op_ptrs();
    auto check_word = [&](const TensorWord& w) {
        // left side: split b(w)
        std::map<std::pair<TensorWord, TensorWord>, Rat> lhs, rhs;
        auto bw = bar_coderivation(ops, BarElement<Rat>::word(sp, w, Q.one()));
        for (const auto& [u, c] : bw.terms())
            for (std::size_t r = 1; r < u.size(); ++r) {
                auto key = std::make_pair(TensorWord(u.begin(), u.begin() + r), TensorWord(u.begin() + r, u.end()));
                lhs[key] += c;
                if (lhs[key] == 0) lhs.erase(key);
            }
        // right side over splits of w
        for (std::size_t r = 1; r < w.size(); ++r) {
            TensorWord w1(w.begin(), w.begin() + r), w2(w.begin() + r, w.end());
            auto b1w = bar_coderivation(ops, BarElement<Rat>::word(sp, w1, Q.one()));
            for (const auto& [u, c] : b1w.terms()) {
                auto key = std::make_pair(u, w2);
                rhs[key] += c;
                if (rhs[key] == 0) rhs.erase(key);
            }
            auto b2w = bar_coderivation(ops, BarElement<Rat>::word(sp, w2, Q.one()));
            Rat sign = (word_parity<Rat>(*sp, w1) == 1) ? -Q.one() : Q.one();
            for (const auto& [u, c] : b2w.terms()) {
                auto key = std::make_pair(w1, u);
                rhs[key] += c * sign;
                if (rhs[key] == 0) rhs.erase(key);
            }
        }
        CHECK(lhs == rhs);
    };
    for_each_tuple(sp->dim(), 2, [&](const std::vector<int>& w) { check_word(w); });
    for_each_tuple(sp->dim(), 3, [&](const std::vector<int>& w) { check_word(w); });
}

TEST_CASE_METHOD(Fix, "shuffle: definition, graded commutativity, associativity") {
    int a = sp->index("1"), b = sp->index("x1"), c = sp->index("y");
    // [a] ⋈ [b] = [a⊗b] + (-1)^{|a||b|} [b⊗a]; |1| = -1, |x1| = 0
    auto s = shuffle(*sp, {a}, {b}, 6);
    BarElement<Rat> expect(sp);
    expect.add({a, b}, Q.one());
    expect.add({b, a}, Q.one());
    CHECK(s == expect);

    int u = sp->index("x1x2");  // degree 1
    auto s2 = shuffle(*sp, {a}, {u}, 6);
    BarElement<Rat> expect2(sp);
    expect2.add({a, u}, Q.one());
    expect2.add({u, a}, -Q.one());  // (-1)^{(-1)(1)} = -1
    CHECK(s2 == expect2);

    // graded commutativity on homogeneous words up to length 2 each
    auto comm = [&](const TensorWord& x, const TensorWord& y) {
        auto xy = shuffle(*sp, x, y, 6);
        auto yx = shuffle(*sp, y, x, 6);
        Rat sign = (word_parity<Rat>(*sp, x) && word_parity<Rat>(*sp, y)) ? -Q.one() : Q.one();
        BarElement<Rat> diff = xy;
        diff.add_scaled(yx, -sign);
        CHECK(diff.is_zero());
    };
    for_each_tuple(sp->dim(), 2, [&](const std::vector<int>& t) { comm({t[0]}, {t[1]}); });
    for_each_tuple(sp->dim(), 3, [&](const std::vector<int>& t) { comm({t[0]}, {t[1], t[2]}); });

    // associativity on generators
    for (int i : {a, b, c}) {
        for (int j : {a, b, c}) {
            for (int k : {a, b, c}) {
                auto left = shuffle(shuffle(*sp, {i}, {j}, 6), BarElement<Rat>::word(sp, {k}, Q.one()), 6);
                auto right = shuffle(BarElement<Rat>::word(sp, {i}, Q.one()), shuffle(*sp, {j}, {k}, 6), 6);
                CHECK(left == right);
            }
        }
    }

    CHECK_THROWS_AS(shuffle(*sp, {a, b, c}, {a, b, c, c}, 6), WordCapExceeded);
}

TEST_CASE("Z2 grading reuses the Z paths with parity arithmetic") {
    Field<Fp> f3{3};
    GradedSpace<Fp> sp(f3, Grading::Z2, {{"e", 0}, {"o", 1}});
    CHECK(sp.deg_add(1, 1) == 0);
    CHECK_THROWS_AS(GradedSpace<Fp>(f3, Grading::Z2, {{"bad", 2}}), std::invalid_argument);

    // a degree-1 map on a Z2 space: entry degrees work mod 2
    MultiMap<Fp> m(&sp, &sp, 1, 1);
    CHECK_NOTHROW(m.set({sp.index("o")}, Element<Fp>::from_name(&sp, "e")));
    CHECK_NOTHROW(m.set({sp.index("e")}, Element<Fp>::from_name(&sp, "o")));
}
