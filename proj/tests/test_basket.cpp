#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "driftsvm/basket.hpp"
#include "driftsvm/metrics.hpp"
#include "driftsvm/model.hpp"
#include "driftsvm/rng.hpp"
#include "driftsvm/strategies.hpp"

using namespace driftsvm;

namespace {

Sample make_sample(std::vector<double> x, int y, std::uint64_t arrival) {
  Sample s;
  s.features = std::move(x);
  s.label = y;
  s.arrival_index = arrival;
  return s;
}

Basket basket_from(const std::vector<Sample>& samples, std::size_t capacity) {
  Basket b(capacity);
  for (const auto& s : samples) b.push_back(make_entry(s));
  return b;
}

// The classic margin pair plus room for extras: converges to w=(1,0), b=0.
std::vector<Sample> margin_pair() {
  return {make_sample({1.0, 0.0}, 1, 0), make_sample({-1.0, 0.0}, -1, 1)};
}

}  // namespace

TEST_CASE("basket container enforces capacity and arrival order") {
  CHECK_THROWS_AS(Basket(0), std::invalid_argument);

  Basket b(2);
  b.push_back(make_entry(make_sample({1.0}, 1, 5)));
  CHECK_THROWS_AS(b.push_back(make_entry(make_sample({1.0}, 1, 5))),
                  std::invalid_argument);  // non-increasing arrival
  CHECK_THROWS_AS(b.push_back(make_entry(make_sample({1.0}, 1, 2))),
                  std::invalid_argument);
  b.push_back(make_entry(make_sample({2.0}, -1, 6)));
  CHECK(b.at_capacity());
  CHECK_THROWS_AS(b.push_back(make_entry(make_sample({3.0}, 1, 7))),
                  std::logic_error);
  CHECK(b.positive_count() == 1);
  CHECK(b.negative_count() == 1);

  b.erase(0);
  CHECK(b.size() == 1);
  CHECK(b[0].sample.arrival_index == 6);
  CHECK(b.positive_count() == 0);
}

TEST_CASE("make_entry caches the augmented self-product") {
  auto e = make_entry(make_sample({3.0, 4.0}, 1, 0));
  CHECK(e.qii == 26.0);  // 9 + 16 + 1
  CHECK(e.alpha == 0.0);
  CHECK(e.current_label == 1);
}

TEST_CASE("admission gate per rule") {
  LinearModel m;
  m.w = {1.0, 0.0};
  m.b = 0.0;
  std::vector<double> x = {0.5, 0.0};  // f = 0.5

  StrategyConfig cfg;
  cfg.include = IncludeRule::OnlyMisclassified;
  CHECK_FALSE(should_include(cfg, m, x, 1));  // correct side, inside margin
  CHECK(should_include(cfg, m, x, -1));       // wrong side

  cfg.include = IncludeRule::OnlyWithinMargin;
  CHECK(should_include(cfg, m, x, 1));  // y*f = 0.5 < 1
  std::vector<double> far = {3.0, 0.0};
  CHECK_FALSE(should_include(cfg, m, far, 1));

  cfg.include = IncludeRule::AddAll;
  CHECK(should_include(cfg, m, far, 1));
  CHECK(should_include(cfg, m, x, -1));
}

TEST_CASE("removal picks the oldest candidate") {
  auto b = basket_from({make_sample({0.0}, 1, 3), make_sample({1.0}, -1, 17),
                        make_sample({2.0}, 1, 42)},
                       3);
  LinearModel m;
  m.w = {0.0};
  m.b = 0.0;
  StrategyConfig cfg;
  cfg.exclude = ExcludeRule::RemoveOldest;

  auto choice = choose_removal(cfg, b, m, 1);
  CHECK(choice.index == 0);
  CHECK(b[choice.index].sample.arrival_index == 3);
  CHECK_FALSE(choice.keep_ratio_fallback);
}

TEST_CASE("removal picks the largest decision magnitude") {
  // f-values 0.2, -3.5, 1.1 with w=(1,), b=0.
  auto b = basket_from({make_sample({0.2}, 1, 0), make_sample({-3.5}, -1, 1),
                        make_sample({1.1}, 1, 2)},
                       3);
  LinearModel m;
  m.w = {1.0};
  m.b = 0.0;
  StrategyConfig cfg;
  cfg.exclude = ExcludeRule::RemoveFarthest;

  CHECK(choose_removal(cfg, b, m, 1).index == 1);

  SUBCASE("equal magnitudes fall back to the older entry") {
    auto tie = basket_from({make_sample({2.0}, 1, 0), make_sample({-2.0}, -1, 1)}, 2);
    CHECK(choose_removal(cfg, tie, m, 1).index == 0);
  }
}

TEST_CASE("balancing restricts the candidate set") {
  // Five negatives (majority), two positives; the oldest negative arrives at 9.
  auto b = basket_from(
      {make_sample({0.0}, 1, 7), make_sample({1.0}, 1, 8),
       make_sample({2.0}, -1, 9), make_sample({3.0}, -1, 10),
       make_sample({4.0}, -1, 11), make_sample({5.0}, -1, 12),
       make_sample({6.0}, -1, 13)},
      7);
  LinearModel m;
  m.w = {1.0};
  m.b = 0.0;

  StrategyConfig cfg;
  cfg.exclude = ExcludeRule::RemoveOldest;

  SUBCASE("larger class loses a member under rebalancing") {
    cfg.balance = BalanceRule::BalancedRatio;
    auto choice = choose_removal(cfg, b, m, 1);
    CHECK(b[choice.index].sample.arrival_index == 9);
  }

  SUBCASE("equal counts widen back to every entry") {
    cfg.balance = BalanceRule::BalancedRatio;
    auto even = basket_from({make_sample({0.0}, 1, 0), make_sample({1.0}, -1, 1),
                             make_sample({2.0}, 1, 2), make_sample({3.0}, -1, 3)},
                            4);
    CHECK(choose_removal(cfg, even, m, 1).index == 0);
  }

  SUBCASE("incoming class is evicted under ratio keeping") {
    cfg.balance = BalanceRule::KeepRatio;
    auto choice = choose_removal(cfg, b, m, -1);
    CHECK(b[choice.index].sample.arrival_index == 9);
    choice = choose_removal(cfg, b, m, 1);
    CHECK(b[choice.index].sample.arrival_index == 7);
    CHECK_FALSE(choice.keep_ratio_fallback);
  }

  SUBCASE("missing incoming class falls back to every entry, flagged") {
    cfg.balance = BalanceRule::KeepRatio;
    auto negatives_only = basket_from(
        {make_sample({0.0}, -1, 0), make_sample({1.0}, -1, 1)}, 2);
    auto choice = choose_removal(cfg, negatives_only, m, 1);
    CHECK(choice.keep_ratio_fallback);
    CHECK(choice.index == 0);
  }
}

TEST_CASE("annulus scoring evicts the entry farthest from its class ring") {
  // Class +1 at x = 0, 2, 4: centroid 2, distances {2, 0, 2}, median 2.
  // The centroid point x=2 deviates most from the ring. Class -1 at 10, 12:
  // both sit exactly on their ring (radius 1), deviation 0.
  auto b = basket_from(
      {make_sample({0.0}, 1, 0), make_sample({2.0}, 1, 1),
       make_sample({4.0}, 1, 2), make_sample({10.0}, -1, 3),
       make_sample({12.0}, -1, 4)},
      5);
  LinearModel m;
  m.w = {0.0};
  m.b = 0.0;
  StrategyConfig cfg;
  cfg.exclude = ExcludeRule::RemoveNonBorder;

  CHECK(choose_removal(cfg, b, m, 1).index == 1);
}

TEST_CASE("retrain rule fires on margin additions and weighted removals") {
  LinearModel m;
  m.w = {1.0, 0.0};
  m.b = 0.0;

  auto outside = make_sample({2.3, 0.0}, 1, 0);  // y*f = 2.3
  auto inside = make_sample({0.9, 0.0}, 1, 1);   // y*f = 0.9

  CHECK_FALSE(needs_retrain(m, outside, 0.0));
  CHECK(needs_retrain(m, inside, std::nullopt));
  CHECK(needs_retrain(m, std::nullopt, 0.4));
  CHECK_FALSE(needs_retrain(m, std::nullopt, 0.0));
  CHECK_FALSE(needs_retrain(m, std::nullopt, std::nullopt));
}

TEST_CASE("support-vector pruning") {
  SUBCASE("zero-weight entries vanish") {
    auto b = basket_from({make_sample({0.0}, 1, 0), make_sample({1.0}, 1, 1),
                          make_sample({2.0}, -1, 2), make_sample({3.0}, -1, 3)},
                         4);
    DualState d;
    d.alphas = {0.0, 0.5, 0.0, 1.0};
    CHECK_FALSE(apply_ksv(b, d));
    REQUIRE(b.size() == 2);
    CHECK(b[0].sample.arrival_index == 1);
    CHECK(b[1].sample.arrival_index == 3);
    CHECK(d.alphas == std::vector<double>{0.5, 1.0});
  }

  SUBCASE("all support vectors means no change") {
    auto b = basket_from({make_sample({0.0}, 1, 0), make_sample({1.0}, -1, 1)}, 2);
    DualState d;
    d.alphas = {0.5, 0.5};
    CHECK_FALSE(apply_ksv(b, d));
    CHECK(b.size() == 2);
  }

  SUBCASE("an all-zero basket keeps its earliest entry") {
    auto b = basket_from({make_sample({0.0}, 1, 0), make_sample({1.0}, -1, 1)}, 2);
    DualState d;
    d.alphas = {0.0, 0.0};
    CHECK(apply_ksv(b, d));
    REQUIRE(b.size() == 1);
    CHECK(b[0].sample.arrival_index == 0);
  }
}

TEST_CASE("relabeling rewrites working labels from the model") {
  auto b = basket_from({make_sample({-0.2, 0.0}, 1, 0),
                        make_sample({1.5, 0.0}, 1, 1),
                        make_sample({0.0, 0.0}, -1, 2)},
                       3);
  LinearModel m;
  m.w = {1.0, 0.0};
  m.b = 0.0;

  int changed = relabel_all(b, m);
  CHECK(changed == 2);
  CHECK(b[0].current_label == -1);  // f = -0.2
  CHECK(b[0].sample.label == 1);    // original retained
  CHECK(b[1].current_label == 1);
  CHECK(b[2].current_label == 1);  // f = 0 exactly goes positive
  CHECK(b.positive_count() == 2);

  CHECK(relabel_all(b, m) == 0);  // fixed point
}

TEST_CASE("initialization keeps the most recent window and records the ratio") {
  ClassWeights cw;
  StrategyConfig cfg;

  SUBCASE("everything fits") {
    cfg.capacity = 10;
    auto st = init_basket(margin_pair(), cfg, 10.0, cw, 1);
    CHECK(st.basket.size() == 2);
    CHECK(st.model.w[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(kkt_violation(st.basket, st.dual, st.model, 10.0, cw) <=
          solver_tolerance(10.0));
  }

  SUBCASE("overflow keeps the tail window") {
    // Classes (+, +, -, +, -, -) with capacity 4: the window holds
    // (-, +, -, -), one positive against three negatives.
    std::vector<Sample> train = {
        make_sample({1.0, 0.0}, 1, 0),  make_sample({1.1, 0.0}, 1, 1),
        make_sample({-1.0, 0.0}, -1, 2), make_sample({1.2, 0.0}, 1, 3),
        make_sample({-1.1, 0.0}, -1, 4), make_sample({-1.2, 0.0}, -1, 5)};
    cfg.capacity = 4;
    auto st = init_basket(train, cfg, 1.0, cw, 1);
    REQUIRE(st.basket.size() == 4);
    CHECK(st.basket[0].sample.arrival_index == 2);
    CHECK(st.basket[3].sample.arrival_index == 5);
    CHECK(st.reference_positive == 1);
    CHECK(st.reference_negative == 3);
  }

  SUBCASE("degenerate training sets are rejected") {
    CHECK_THROWS_AS(init_basket({}, cfg, 1.0, cw, 1), std::invalid_argument);
    std::vector<Sample> one_class = {make_sample({1.0}, 1, 0),
                                     make_sample({2.0}, 1, 1)};
    CHECK_THROWS_AS(init_basket(one_class, cfg, 1.0, cw, 1),
                    std::invalid_argument);
    cfg.capacity = 1;
    CHECK_THROWS_AS(init_basket(margin_pair(), cfg, 1.0, cw, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("surgical removal leaves a consistent representation") {
  ClassWeights cw;
  StrategyConfig cfg;
  cfg.capacity = 4;
  std::vector<Sample> train = {
      make_sample({1.0, 0.2}, 1, 0), make_sample({-1.0, -0.1}, -1, 1),
      make_sample({0.8, -0.3}, 1, 2), make_sample({-0.9, 0.4}, -1, 3)};
  auto st = init_basket(train, cfg, 5.0, cw, 3);

  double removed = remove_entry(st, 1);
  CHECK(removed > 0.0);

  // w must equal the sum of the surviving contributions exactly enough.
  std::vector<double> w(2, 0.0);
  double b = 0.0;
  for (std::size_t i = 0; i < st.basket.size(); ++i) {
    double yd = st.basket[i].current_label;
    double a = st.dual.alphas[i];
    for (std::size_t k = 0; k < 2; ++k)
      w[k] += a * yd * st.basket[i].sample.features[k];
    b += a * yd;
  }
  CHECK(std::abs(st.model.w[0] - w[0]) <= 1e-10);
  CHECK(std::abs(st.model.w[1] - w[1]) <= 1e-10);
  CHECK(std::abs(st.model.b - b) <= 1e-10);
}

TEST_CASE("steps that need no refit leave the model bit-identical") {
  ClassWeights cw;
  StrategyConfig cfg;
  cfg.capacity = 3;
  // Oldest entry sits far outside the margin, so it carries no dual weight.
  std::vector<Sample> train = {make_sample({5.0, 0.0}, 1, 0),
                               make_sample({1.0, 0.0}, 1, 1),
                               make_sample({-1.0, 0.0}, -1, 2)};
  auto st = init_basket(train, cfg, 10.0, cw, 7);
  REQUIRE(st.dual.alphas[0] == 0.0);

  auto w_before = st.model.w;
  double b_before = st.model.b;
  auto skips_before = st.skip_count;

  // Incoming sample outside the margin evicts the zero-weight entry.
  auto out = process_sample(st, make_sample({6.0, 0.0}, 1, 3));
  CHECK(out.included);
  CHECK(out.removed);
  CHECK(out.removed_alpha == 0.0);
  CHECK_FALSE(out.retrained);
  CHECK(st.model.w == w_before);
  CHECK(st.model.b == b_before);
  CHECK(st.update_count == 0);
  CHECK(st.skip_count == skips_before + 1);
  CHECK(st.basket[2].sample.arrival_index == 3);
}

TEST_CASE("gated-out samples change nothing at all") {
  ClassWeights cw;
  StrategyConfig cfg;
  cfg.include = IncludeRule::OnlyMisclassified;
  cfg.capacity = 4;
  auto st = init_basket(margin_pair(), cfg, 10.0, cw, 1);
  auto w_before = st.model.w;
  auto size_before = st.basket.size();

  auto out = process_sample(st, make_sample({0.5, 0.0}, 1, 2));
  CHECK_FALSE(out.included);
  CHECK(st.basket.size() == size_before);
  CHECK(st.model.w == w_before);
  CHECK(st.update_count == 0);
  CHECK(st.retrain_count == 0);
}

TEST_CASE("online stepping matches a from-scratch refit of the same basket") {
  ClassWeights cw;
  StrategyConfig cfg;
  cfg.capacity = 4;
  const double C = 1.0;
  std::vector<Sample> train = {
      make_sample({1.2, 0.1}, 1, 0), make_sample({0.9, -0.2}, 1, 1),
      make_sample({-1.0, 0.2}, -1, 2), make_sample({-1.3, -0.1}, -1, 3)};
  auto st = init_basket(train, cfg, C, cw, 11);

  // Drift the stream slightly and push it through the online path.
  std::mt19937_64 gen(99);
  for (int i = 0; i < 40; ++i) {
    double shift = 0.02 * i;
    bool pos = (i % 2 == 0);
    double cx = pos ? 1.0 + shift : -1.0 + shift * 0.5;
    Sample s = make_sample({cx + 0.3 * (uniform01(gen) - 0.5),
                            0.4 * (uniform01(gen) - 0.5)},
                           pos ? 1 : -1, 4 + i);
    process_sample(st, s);
  }

  // Cold refit of the final basket with the offline budget.
  std::mt19937_64 fit_rng(1234);
  auto cold = fit_dcd(st.basket, C, cw, nullptr,
                      static_cast<long>(kOfflineEpochsPerSample * st.basket.size()),
                      solver_tolerance(C), fit_rng);

  // Both models must score a probe set identically for balanced accuracy.
  ConfusionCounts online_counts, cold_counts;
  std::mt19937_64 probe(555);
  for (int i = 0; i < 200; ++i) {
    bool pos = (i % 2 == 0);
    std::vector<double> x = {(pos ? 1.8 : -1.8) + 0.2 * (uniform01(probe) - 0.5),
                             0.2 * (uniform01(probe) - 0.5)};
    int truth = pos ? 1 : -1;
    online_counts.record(truth, decision_value(st.model, x) >= 0 ? 1 : -1);
    cold_counts.record(truth, decision_value(cold.model, x) >= 0 ? 1 : -1);
  }
  CHECK(std::abs(balanced_accuracy(online_counts) -
                 balanced_accuracy(cold_counts)) < 1e-6);
}

TEST_CASE("capacity bound and sliding window hold across random streams") {
  ClassWeights cw;
  StrategyConfig cfg;
  cfg.capacity = 20;
  std::vector<Sample> train;
  std::mt19937_64 gen(42);
  for (int i = 0; i < 30; ++i) {
    bool pos = (i % 2 == 0);
    train.push_back(make_sample({(pos ? 1.0 : -1.0) + 0.3 * (uniform01(gen) - 0.5),
                                 uniform01(gen) - 0.5},
                                pos ? 1 : -1, static_cast<std::uint64_t>(i)));
  }
  auto st = init_basket(train, cfg, 1.0, cw, 5);

  std::vector<std::uint64_t> inserted;
  for (std::size_t i = 0; i < st.basket.size(); ++i)
    inserted.push_back(st.basket[i].sample.arrival_index);

  for (int i = 0; i < 500; ++i) {
    bool pos = uniform01(gen) < 0.5;
    Sample s = make_sample({(pos ? 1.0 : -1.0) + 2.0 * (uniform01(gen) - 0.5),
                            2.0 * (uniform01(gen) - 0.5)},
                           pos ? 1 : -1, static_cast<std::uint64_t>(30 + i));
    auto out = process_sample(st, s);
    if (out.included) inserted.push_back(s.arrival_index);

    REQUIRE(st.basket.size() <= cfg.capacity);
    // Sliding window: survivors are exactly the newest inserted indices.
    REQUIRE(st.basket.size() <= inserted.size());
    std::size_t offset = inserted.size() - st.basket.size();
    for (std::size_t k = 0; k < st.basket.size(); ++k)
      REQUIRE(st.basket[k].sample.arrival_index == inserted[offset + k]);
  }
}

TEST_CASE("rebalanced baskets approach even class counts") {
  ClassWeights cw;
  StrategyConfig cfg;
  // Odd capacity: the counts can never tie, so once the difference reaches
  // one it stays there. At a tie the eviction is unrestricted and the
  // difference can bounce back to two.
  cfg.capacity = 17;
  cfg.balance = BalanceRule::BalancedRatio;

  // Start heavily skewed: 12 negatives, 5 positives.
  std::vector<Sample> train;
  for (int i = 0; i < 12; ++i)
    train.push_back(make_sample({-1.0 - 0.05 * i, 0.1 * i}, -1,
                                static_cast<std::uint64_t>(i)));
  for (int i = 0; i < 5; ++i)
    train.push_back(make_sample({1.0 + 0.05 * i, -0.1 * i}, 1,
                                static_cast<std::uint64_t>(12 + i)));
  std::sort(train.begin(), train.end(),
            [](const Sample& a, const Sample& b) {
              return a.arrival_index < b.arrival_index;
            });
  auto st = init_basket(train, cfg, 1.0, cw, 9);

  std::mt19937_64 gen(7);
  std::uint64_t arrival = 17;
  std::size_t steps_since_start = 0;
  for (int i = 0; i < 200; ++i) {
    bool pos = (i % 2 == 0);  // alternating stream
    Sample s = make_sample({(pos ? 1.0 : -1.0) + 0.5 * (uniform01(gen) - 0.5),
                            0.5 * (uniform01(gen) - 0.5)},
                           pos ? 1 : -1, arrival++);
    process_sample(st, s);
    ++steps_since_start;
    if (steps_since_start > 2 * cfg.capacity) {
      std::size_t p = st.basket.positive_count();
      std::size_t n = st.basket.negative_count();
      REQUIRE((p > n ? p - n : n - p) <= 1);
    }
  }
}

TEST_CASE("ratio keeping preserves class counts when no fallback fires") {
  ClassWeights cw;
  StrategyConfig cfg;
  cfg.capacity = 12;
  cfg.balance = BalanceRule::KeepRatio;

  std::vector<Sample> train;
  for (int i = 0; i < 12; ++i) {
    bool pos = (i % 3 == 0);  // ratio 4:8
    train.push_back(make_sample({(pos ? 1.0 : -1.0), 0.05 * i}, pos ? 1 : -1,
                                static_cast<std::uint64_t>(i)));
  }
  auto st = init_basket(train, cfg, 1.0, cw, 13);
  const std::size_t ref_pos = st.basket.positive_count();
  const std::size_t ref_neg = st.basket.negative_count();
  CHECK(st.reference_positive == ref_pos);
  CHECK(st.reference_negative == ref_neg);

  std::mt19937_64 gen(21);
  for (int i = 0; i < 300; ++i) {
    bool pos = uniform01(gen) < 0.4;
    Sample s = make_sample({(pos ? 1.0 : -1.0) + 0.8 * (uniform01(gen) - 0.5),
                            0.8 * (uniform01(gen) - 0.5)},
                           pos ? 1 : -1, static_cast<std::uint64_t>(12 + i));
    auto out = process_sample(st, s);
    if (out.included && !out.keep_ratio_fallback) {
      REQUIRE(st.basket.positive_count() == ref_pos);
      REQUIRE(st.basket.negative_count() == ref_neg);
    }
  }
  CHECK(st.flags.empty());  // the stream always has both classes in the basket
}

TEST_CASE("every unretrained step is bitwise silent") {
  ClassWeights cw;
  StrategyConfig cfg;
  cfg.capacity = 30;

  std::vector<Sample> train;
  std::mt19937_64 gen(31337);
  for (int i = 0; i < 30; ++i) {
    bool pos = (i % 2 == 0);
    train.push_back(make_sample({(pos ? 1.5 : -1.5) + uniform01(gen) - 0.5,
                                 uniform01(gen) - 0.5},
                                pos ? 1 : -1, static_cast<std::uint64_t>(i)));
  }
  auto st = init_basket(train, cfg, 1.0, cw, 99);

  std::size_t skips = 0;
  for (int i = 0; i < 400; ++i) {
    bool pos = uniform01(gen) < 0.5;
    Sample s = make_sample({(pos ? 1.5 : -1.5) + 3.0 * (uniform01(gen) - 0.5),
                            3.0 * (uniform01(gen) - 0.5)},
                           pos ? 1 : -1, static_cast<std::uint64_t>(30 + i));
    auto w_before = st.model.w;
    double b_before = st.model.b;
    auto out = process_sample(st, s);
    if (!out.retrained && !out.relabel_refit) {
      ++skips;
      REQUIRE(st.model.w == w_before);
      REQUIRE(st.model.b == b_before);
    }
  }
  CHECK(skips > 0);
}

TEST_CASE("pruning and relabeling keep state aligned over a stream") {
  ClassWeights cw;
  StrategyConfig cfg;
  cfg.capacity = 15;
  cfg.keep_only_sv = true;
  cfg.relabel = true;

  std::vector<Sample> train;
  std::mt19937_64 gen(2024);
  for (int i = 0; i < 15; ++i) {
    bool pos = (i % 2 == 0);
    train.push_back(make_sample({(pos ? 1.0 : -1.0) + 0.6 * (uniform01(gen) - 0.5),
                                 0.6 * (uniform01(gen) - 0.5)},
                                pos ? 1 : -1, static_cast<std::uint64_t>(i)));
  }
  auto st = init_basket(train, cfg, 1.0, cw, 17);

  for (int i = 0; i < 300; ++i) {
    bool pos = uniform01(gen) < 0.5;
    Sample s = make_sample({(pos ? 1.0 : -1.0) + 2.5 * (uniform01(gen) - 0.5),
                            2.5 * (uniform01(gen) - 0.5)},
                           pos ? 1 : -1, static_cast<std::uint64_t>(15 + i));
    auto out = process_sample(st, s);
    REQUIRE(st.dual.alphas.size() == st.basket.size());
    REQUIRE(st.basket.size() >= 1);
    REQUIRE(st.basket.size() <= cfg.capacity);
    // Pruning keeps only weighted entries unless it had to keep the last
    // one. A relabeling refit runs after the pruning pass, so it may park
    // fresh zero weights in the basket until the next step.
    if (st.basket.size() > 1 && !out.relabel_refit) {
      bool any_zero = false;
      for (double a : st.dual.alphas)
        if (a == 0.0) any_zero = true;
      REQUIRE_FALSE(any_zero);
    }
  }
  CHECK(st.retrain_count >= st.update_count);
}
