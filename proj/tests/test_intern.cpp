#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <thread>
#include <vector>

#include "tgx/intern.hpp"

using namespace tgx;

TEST_CASE("equal keys intern to equal ids, distinct keys to distinct ids") {
    KeyBuilder a(KeyTag::feature_tuple);
    a.add_int(1).add_int(2);
    KeyBuilder b(KeyTag::feature_tuple);
    b.add_int(1).add_int(2);
    CHECK(intern(a) == intern(b));

    KeyBuilder c(KeyTag::feature_tuple);
    c.add_int(2).add_int(1);
    CHECK(intern(a) != intern(c));

    KeyBuilder d(KeyTag::twl_init);
    d.add_int(1).add_int(2);
    CHECK(intern(a) != intern(d)); // tag is part of the key
}

TEST_CASE("token framing keeps adjacent fields apart") {
    // (1,2) as two ints vs as one list
    KeyBuilder flat(KeyTag::feature_tuple);
    flat.add_int(1).add_int(2);
    KeyBuilder list(KeyTag::feature_tuple);
    list.add_ints({1, 2});
    CHECK(intern(flat) != intern(list));

    // ((1)(2)) vs ((1,2))
    KeyBuilder split_lists(KeyTag::feature_tuple);
    split_lists.open();
    split_lists.add_ints({1});
    split_lists.add_ints({2});
    split_lists.close();
    KeyBuilder one_list(KeyTag::feature_tuple);
    one_list.open();
    one_list.add_ints({1, 2});
    one_list.close();
    CHECK(intern(split_lists) != intern(one_list));

    // an int payload is distinct from an id payload with the same value
    KeyBuilder as_int(KeyTag::pint_update);
    as_int.add_int(7);
    KeyBuilder as_id(KeyTag::pint_update);
    as_id.add_id(7);
    CHECK(intern(as_int) != intern(as_id));

    // empty list vs no list at all
    KeyBuilder empty_list(KeyTag::feature_tuple);
    empty_list.add_ints({});
    KeyBuilder nothing(KeyTag::feature_tuple);
    CHECK(intern(empty_list) != intern(nothing));
}

TEST_CASE("builder misuse is rejected") {
    KeyBuilder kb(KeyTag::feature_tuple);
    CHECK_THROWS_AS(kb.close(), std::logic_error);

    KeyBuilder open_only(KeyTag::feature_tuple);
    open_only.open();
    CHECK_THROWS_AS(open_only.tokens(), std::logic_error);
}

TEST_CASE("intern_tuple distinguishes values and lengths") {
    CanonicalId a = intern_tuple(KeyTag::feature_tuple, {0});
    CanonicalId b = intern_tuple(KeyTag::feature_tuple, {1});
    CanonicalId c = intern_tuple(KeyTag::feature_tuple, {0, 0});
    CanonicalId d = intern_tuple(KeyTag::feature_tuple, {});
    CHECK(a != b);
    CHECK(a != c);
    CHECK(a != d);
    CHECK(intern_tuple(KeyTag::feature_tuple, {0}) == a);
}

TEST_CASE("registry size grows only on novel keys") {
    std::size_t before = InternRegistry::instance().size();
    CanonicalId fresh = intern_tuple(KeyTag::node_state, {990001, 990002});
    CHECK(InternRegistry::instance().size() == before + 1);
    CHECK(intern_tuple(KeyTag::node_state, {990001, 990002}) == fresh);
    CHECK(InternRegistry::instance().size() == before + 1);
    CHECK(fresh >= 1);
}

TEST_CASE("concurrent interning settles on one id per key") {
    std::vector<std::vector<CanonicalId>> results(4);
    std::vector<std::thread> threads;
    for (int w = 0; w < 4; ++w)
        threads.emplace_back([&results, w]() {
            for (int i = 0; i < 500; ++i)
                results[static_cast<std::size_t>(w)].push_back(
                    intern_tuple(KeyTag::node_state, {770000 + i % 50}));
        });
    for (auto& th : threads) th.join();
    for (int w = 1; w < 4; ++w)
        CHECK(results[static_cast<std::size_t>(w)] == results[0]);
}
