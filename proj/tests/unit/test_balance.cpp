#include <asymnet/balance.hpp>

#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace asymnet;

namespace {

constexpr Sign P = Sign::positive;
constexpr Sign N = Sign::negative;

void put(NormalizedMatrix& nm, const std::string& a, const std::string& b, Feature f, Maybe v)
{
    NormalizedMatrix::Row row = {};
    if (nm.contains({a, b}))
        row = nm.cells().at({a, b});
    row[index_of(f)] = {1.0, 1.0, v};
    for (Feature g : kFeatures)
        nm.set({a, b}, g, row[index_of(g)]);
}

// Symmetric directed values so that merged(a, b) = m.
void put_merged(NormalizedMatrix& nm, const std::string& a, const std::string& b, double m)
{
    put(nm, a, b, Feature::length, m / 2);
    put(nm, b, a, Feature::length, m / 2);
}

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

TEST_SUITE("balance") {

TEST_CASE("sign labelling")
{
    NormalizedMatrix nm;
    put_merged(nm, "a", "b", -1.0);
    put_merged(nm, "a", "c", 0.0);
    put_merged(nm, "b", "c", 2.0);
    auto s = label_merged_edges(nm, Feature::length, 0.5);
    CHECK(s.edges.at(UnorderedPair::of("a", "b")).sign == N);
    CHECK(s.edges.at(UnorderedPair::of("a", "c")).sign == N);
    CHECK(s.edges.at(UnorderedPair::of("b", "c")).sign == P);
    CHECK(s.positive_fraction == doctest::Approx(1.0 / 3.0));
    CHECK(label_merged_edges(nm, Feature::length, -5).positive_fraction == 1.0);
    CHECK(label_merged_edges(nm, Feature::length, 5).positive_fraction == 0.0);
    // A value equal to the threshold is '-'.
    CHECK(label_merged_edges(nm, Feature::length, 2.0).positive_fraction == 0.0);
    CHECK(sign_above(0.5, 0.5) == N);

    NormalizedMatrix none;
    put(none, "a", "b", Feature::length, 1.0);
    put(none, "b", "a", Feature::length, std::nullopt);
    CHECK_THROWS_AS(label_merged_edges(none, Feature::length, 0), EmptyDomainError);
}

TEST_CASE("traditional classification")
{
    CHECK(classify_traditional({P, P, P}) == Verdict::balanced);
    CHECK(classify_traditional({P, P, N}) == Verdict::unbalanced);
    CHECK(classify_traditional({P, N, N}) == Verdict::balanced);
    CHECK(classify_traditional({N, N, N}) == Verdict::unbalanced);
    // Permutation invariance over all 8 patterns.
    for (int mask = 0; mask < 8; ++mask) {
        std::array<Sign, 3> s = {mask & 1 ? P : N, mask & 2 ? P : N, mask & 4 ? P : N};
        auto v = classify_traditional(s);
        std::array<Sign, 3> perm = s;
        std::sort(perm.begin(), perm.end());
        do {
            CHECK(classify_traditional(perm) == v);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("baselines")
{
    CHECK(traditional_baseline(0.5) == 0.5);
    CHECK(traditional_baseline(1.0) == 1.0);
    CHECK(traditional_baseline(0.0) == 0.0);
    CHECK(extended_baseline(0.5) == 0.5);
    CHECK(extended_baseline(0.0) == 1.0);
    CHECK(extended_baseline(1.0) == 1.0);
    for (int i = 0; i <= 100; ++i) {
        double p = i / 100.0;
        CHECK(extended_baseline(p) == doctest::Approx(extended_baseline(1.0 - p)).epsilon(1e-14));
        CHECK(extended_baseline(p) >= 0.5);
        // Complement: fraction of unbalanced patterns {++-, ---}.
        double unbalanced = 3 * p * p * (1 - p) + (1 - p) * (1 - p) * (1 - p);
        CHECK(traditional_baseline(p) + unbalanced == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(traditional_baseline(-0.1), std::domain_error);
    CHECK_THROWS_AS(extended_baseline(1.5), std::domain_error);
    CHECK_THROWS_AS(extended_baseline(std::nan("")), std::domain_error);
}

TEST_CASE("Monte-Carlo agreement of the random-sign simulation")
{
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        CHECK(std::abs(simulate_random_balance(BalanceMode::traditional, p, 100000, 42) - traditional_baseline(p)) <
              0.01);
        CHECK(std::abs(simulate_random_balance(BalanceMode::extended, p, 100000, 43) - extended_baseline(p)) <
              0.01);
    }
    CHECK(simulate_random_balance(BalanceMode::extended, 0.3, 1000, 5) ==
          simulate_random_balance(BalanceMode::extended, 0.3, 1000, 5));
    CHECK_THROWS_AS(simulate_random_balance(BalanceMode::extended, 0.3, 0, 5), std::invalid_argument);
}

TEST_CASE("default extended threshold")
{
    NormalizedMatrix nm;
    put(nm, "a", "b", Feature::length, 0.2);
    put(nm, "b", "a", Feature::length, 0.0);
    put(nm, "a", "c", Feature::length, 0.0);
    put(nm, "c", "a", Feature::length, 0.4);
    CHECK(default_extended_threshold(nm, Feature::length) == doctest::Approx(0.3));

    NormalizedMatrix sym;
    put_merged(sym, "a", "b", 1.0);
    CHECK(default_extended_threshold(sym, Feature::length) == 0.0);

    NormalizedMatrix one;
    put(one, "a", "b", Feature::length, 1.0);
    put(one, "b", "a", Feature::length, 0.1);
    CHECK(default_extended_threshold(one, Feature::length) == doctest::Approx(0.9));
    CHECK_THROWS_AS(default_extended_threshold(NormalizedMatrix{}, Feature::length), EmptyDomainError);
}

TEST_CASE("extended classification")
{
    // Anchor (a, b), third party c: d3 = |f'(a,c) - f'(b,c)|, d1 = |f'(a,b) - f'(b,a)|.
    auto triad = [](double d3, double d1) {
        NormalizedMatrix nm;
        put(nm, "a", "b", Feature::length, d1);
        put(nm, "b", "a", Feature::length, 0.0);
        put(nm, "a", "c", Feature::length, d3);
        put(nm, "b", "c", Feature::length, 0.0);
        put(nm, "c", "a", Feature::length, 0.0);
        put(nm, "c", "b", Feature::length, 0.0);
        auto labels = classify_extended({"a", "b", "c"}, nm, Feature::length, 0.5);
        REQUIRE(labels.size() == 3);
        CHECK(labels[0].a == "a");
        CHECK(labels[0].b == "b");
        CHECK(labels[0].c == "c");
        CHECK(labels[0].third_party_difference == doctest::Approx(d3));
        CHECK(labels[0].interrelationship_difference == doctest::Approx(d1));
        return labels[0];
    };
    auto l1 = triad(0.1, 0.1);
    CHECK(l1.third_party_sign == N);
    CHECK(l1.interrelationship_sign == N);
    CHECK(l1.verdict == Verdict::balanced);
    auto l2 = triad(0.9, 0.1);
    CHECK(l2.third_party_sign == P);
    CHECK(l2.interrelationship_sign == N);
    CHECK(l2.verdict == Verdict::unbalanced);
    auto l3 = triad(0.9, 0.9);
    CHECK(l3.verdict == Verdict::balanced);

    // An undefined directed value drops only the configurations that need it.
    NormalizedMatrix partial;
    for (auto [x, y] : std::vector<std::pair<const char*, const char*>>{
             {"a", "b"}, {"b", "a"}, {"a", "c"}, {"c", "a"}, {"b", "c"}})
        put(partial, x, y, Feature::length, 0.3);
    put(partial, "c", "b", Feature::length, std::nullopt);
    auto labels = classify_extended({"a", "b", "c"}, partial, Feature::length, 0.5);
    CHECK(labels.size() == 1); // only anchor (a, b | c) avoids f'(c, b)
}

TEST_CASE("triad verdicts count every configuration")
{
    std::mt19937_64 rng(8);
    NormalizedMatrix nm;
    std::vector<UnorderedPair> pairs;
    const std::vector<std::string> v = {"a", "b", "c", "d", "e"};
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            put(nm, v[i], v[j], Feature::length, uniform(rng) - 0.5);
            put(nm, v[j], v[i], Feature::length, uniform(rng) - 0.5);
            pairs.push_back(UnorderedPair::of(v[i], v[j]));
        }
    auto g = build_graph(pairs);
    auto tris = enumerate_triangles(g);
    REQUIRE(tris.size() == 10);
    for (double theta : {-1.0, 0.0, 0.2, 0.5, 2.0}) {
        std::size_t bal = 0, unb = 0, total = 0;
        for (const auto& t : tris) {
            std::array<std::string, 3> names = {g.name(t.a), g.name(t.b), g.name(t.c)};
            for (const auto& l : classify_extended(names, nm, Feature::length, theta)) {
                (l.verdict == Verdict::balanced ? bal : unb) += 1;
                ++total;
            }
        }
        CHECK(bal + unb == total);
        CHECK(total == 30);
        std::size_t counted = 0, counted_bal = 0;
        for (const auto& tv : classify_triads(g, tris, nm, Feature::length, BalanceMode::extended, theta)) {
            counted += tv.evaluated_configs;
            counted_bal += tv.balanced_configs;
            CHECK(tv.balanced() == (2 * tv.balanced_configs > tv.evaluated_configs));
        }
        CHECK(counted == total);
        CHECK(counted_bal == bal);
    }
}

TEST_CASE("auto sweep")
{
    NormalizedMatrix nm;
    for (int i = 0; i < 5; ++i)
        put_merged(nm, "a", "v" + std::to_string(i), static_cast<double>(i));
    auto s = auto_sweep(nm, Feature::length, BalanceMode::traditional, 5);
    CHECK(s == std::vector<double>{0, 1, 2, 3, 4});
    auto s9 = auto_sweep(nm, Feature::length, BalanceMode::traditional, 9);
    REQUIRE(s9.size() == 9);
    CHECK(s9[1] == 0.5);
    // Extended sweeps run over pair differences, here all zero.
    CHECK(auto_sweep(nm, Feature::length, BalanceMode::extended, 41) == std::vector<double>{0});
}

TEST_CASE("all merged values above every threshold")
{
    NormalizedMatrix nm;
    put_merged(nm, "a", "b", 3.0);
    put_merged(nm, "b", "c", 4.0);
    put_merged(nm, "a", "c", 5.0);
    std::vector<double> one = {0.0};
    auto c = balance_curve(nm, Feature::length, BalanceMode::traditional, one);
    REQUIRE(c.points.size() == 1);
    CHECK(c.points[0].x == 1.0);
    CHECK(c.points[0].y == 1.0);
    CHECK(*c.points[0].baseline == 1.0);

    std::vector<double> many = {-1.0, 0.5, 2.9};
    for (const auto& p : balance_curve(nm, Feature::length, BalanceMode::traditional, many).points) {
        CHECK(p.x == 1.0);
        CHECK(p.y == 1.0);
    }
}

TEST_CASE("curve on a graph without triangles is empty with a warning")
{
    NormalizedMatrix nm;
    put_merged(nm, "a", "b", 1.0);
    put_merged(nm, "b", "c", 1.0);
    std::vector<double> sweep = {0.0};
    auto c = balance_curve(nm, Feature::length, BalanceMode::traditional, sweep);
    CHECK(c.points.empty());
    CHECK(c.warnings.size() == 1);
    CHECK_THROWS_AS(balance_curve(NormalizedMatrix{}, Feature::length, BalanceMode::traditional, sweep),
                    EmptyDomainError);
}

TEST_CASE("synthetic random triangles follow the baselines")
{
    const int triangles = 10000;
    for (double p : {0.2, 0.5, 0.8}) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(p * 1000));
        NormalizedMatrix trad, ext;
        std::vector<UnorderedPair> pairs;
        for (int t = 0; t < triangles; ++t) {
            std::string v[3] = {"t" + std::to_string(t) + "a", "t" + std::to_string(t) + "b",
                                "t" + std::to_string(t) + "c"};
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    put_merged(trad, v[i], v[j], uniform(rng) < p ? 1.0 : -1.0);
                    put(ext, v[i], v[j], Feature::length, uniform(rng));
                    put(ext, v[j], v[i], Feature::length, uniform(rng));
                    pairs.push_back(UnorderedPair::of(v[i], v[j]));
                }
        }
        auto g = build_graph(pairs);

        std::vector<double> zero = {0.0};
        auto tc = balance_curve(g, trad, Feature::length, BalanceMode::traditional, zero);
        REQUIRE(tc.points.size() == 1);
        CHECK(std::abs(tc.points[0].x - p) < 0.02);
        CHECK(std::abs(tc.points[0].y - traditional_baseline(tc.points[0].x)) < 0.02);

        // |X - Y| > θ with X, Y ~ U(0, 1) has probability (1 - θ)².
        std::vector<double> theta = {1.0 - std::sqrt(p)};
        auto ec = balance_curve(g, ext, Feature::length, BalanceMode::extended, theta);
        REQUIRE(ec.points.size() == 1);
        CHECK(std::abs(ec.points[0].x - p) < 0.02);
        CHECK(std::abs(ec.points[0].y - extended_baseline(ec.points[0].x)) < 0.02);
    }
}

TEST_CASE("curve csv")
{
    NormalizedMatrix nm;
    put_merged(nm, "a", "b", 3.0);
    put_merged(nm, "b", "c", -1.0);
    put_merged(nm, "a", "c", 1.0);
    std::vector<double> sweep = {2.0, 0.0};
    auto c = balance_curve(nm, Feature::length, BalanceMode::traditional, sweep);
    std::ostringstream out;
    write_curve_csv(out, c);
    const auto text = out.str();
    CHECK(text.rfind("theta,x_positive_fraction,balanced_fraction,baseline\n2,0.3333333333333333,1,", 0) == 0);
    CHECK(text.find("\n0,0.6666666666666666,0,") != std::string::npos);
    REQUIRE(c.points.size() == 2);
    CHECK(*c.points[0].baseline == doctest::Approx(13.0 / 27.0).epsilon(1e-14));
    CHECK(*c.points[1].baseline == doctest::Approx(14.0 / 27.0).epsilon(1e-14));
}

} // TEST_SUITE

TEST_SUITE("parallel") {

TEST_CASE("balance curve agrees with the serial reference")
{
    std::mt19937_64 rng(31);
    NormalizedMatrix nm;
    std::vector<UnorderedPair> pairs;
    const int n = 60;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (uniform(rng) < 0.25) {
                auto a = "v" + std::to_string(i), b = "v" + std::to_string(j);
                for (Feature f : kFeatures) {
                    put(nm, a, b, f, uniform(rng) < 0.05 ? Maybe{} : Maybe{uniform(rng) * 2 - 1});
                    put(nm, b, a, f, uniform(rng) * 2 - 1);
                }
                pairs.push_back(UnorderedPair::of(a, b));
            }
    auto g = build_graph(pairs);
    const int saved = omp_get_max_threads();
    for (BalanceMode mode : {BalanceMode::traditional, BalanceMode::extended}) {
        for (Feature f : kFeatures) {
            auto sweep = auto_sweep(nm, f, mode, 41);
            auto ref = serial::balance_curve(g, nm, f, mode, sweep);
            for (int threads : {1, 2, 5}) {
                omp_set_num_threads(threads);
                auto got = balance_curve(g, nm, f, mode, sweep);
                CHECK(got.points == ref.points);
            }
        }
    }
    omp_set_num_threads(saved);
}

} // TEST_SUITE
