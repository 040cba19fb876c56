#include <gtest/gtest.h>

#include <set>

#include "sdtree/sdtree.hpp"
#include "support/oracles.hpp"

using namespace sdtree;

TEST(EnumerateShapes, SdFormCountsMatchAlpha) {
  const ShapeLevels levels(16, Equivalence::sd_form);
  const auto a = alpha_table(16);
  for (std::uint64_t n = 1; n <= 16; ++n) EXPECT_EQ(BigCount(levels.level(n).size()), a[n]) << n;
}

TEST(EnumerateShapes, IsomorphismCountsMatchWedderburnEtherington) {
  const ShapeLevels levels(18, Equivalence::isomorphism);
  const auto we = oracle::wedderburn_etherington(18);
  for (std::uint64_t n = 1; n <= 18; ++n) EXPECT_EQ(BigCount(levels.level(n).size()), we[n]) << n;
  EXPECT_EQ(we[8], 23);
  EXPECT_EQ(we[16], 10905);
}

TEST(EnumerateShapes, IsomorphismCatalogIsPairwiseDistinct) {
  for (std::uint64_t n = 1; n <= 12; ++n) {
    const auto cat = enumerate_shapes(n, Equivalence::isomorphism);
    std::set<CanonicalForm> forms;
    for (std::size_t i = 0; i < cat.size(); ++i) {
      const Tree& t = cat.shapes[i];
      EXPECT_EQ(t.leaf_count(), n);
      EXPECT_EQ(orient_canonically(t), t);
      forms.insert(canonicalize(t));
      const auto lab = sd_label(t);
      EXPECT_EQ(lab.s_count, cat.s_count[i]);
      EXPECT_EQ(lab.d_count, cat.d_count[i]);
      EXPECT_EQ(colless_index(t), cat.colless[i]);
    }
    EXPECT_EQ(forms.size(), cat.size()) << n;
  }
}

TEST(EnumerateShapes, SdFormRecordsAreConsistent) {
  for (std::uint64_t n = 1; n <= 10; ++n) {
    const auto cat = enumerate_shapes(n);
    for (std::size_t i = 0; i < cat.size(); ++i) {
      const auto lab = sd_label(cat.shapes[i]);
      EXPECT_EQ(lab.s_count + lab.d_count + 1, n);
      EXPECT_EQ(lab.s_count, cat.s_count[i]);
      EXPECT_EQ(colless_index(cat.shapes[i]), cat.colless[i]);
    }
  }
}

TEST(EnumerateShapes, SizeLimit) {
  EXPECT_THROW(enumerate_shapes(19), SizeError);
  EXPECT_THROW(enumerate_shapes(0), DomainError);
}

TEST(Verify, ThetaHistogramAtNine) {
  const auto r = verify_theta(9);
  EXPECT_TRUE(r.pass) << r.to_json().dump();
  EXPECT_EQ(r.details["histogram"]["5"], 8);
  EXPECT_EQ(r.details["shapes"], 47);
  EXPECT_EQ(r.details["alpha"], "47");
}

TEST(Verify, AllChecksPassUpToFourteen) {
  for (const auto& r : verify_all(14)) EXPECT_TRUE(r.pass) << r.to_json().dump();
}

TEST(Verify, MindDetails) {
  const auto r = verify_mind(13);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.details["omega"], 3);
  EXPECT_EQ(r.details["min_d"], 2);
  EXPECT_EQ(r.details["mind_trees"], 3);
}

TEST(Verify, AffixIdentityBeyondEnumeration) {
  for (std::uint64_t n : {27u, 45u, 100u, 127u, 255u, 1000u}) {
    const auto r = verify_affix(n);
    EXPECT_TRUE(r.pass) << r.to_json().dump();
    EXPECT_GT(r.details["checked"].get<std::uint64_t>(), 0u);
  }
}

TEST(Verify, ReportJsonShape) {
  const auto j = verify_colless_extremes(7).to_json();
  EXPECT_EQ(j["check"], "colless");
  EXPECT_EQ(j["n"], 7);
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["details"]["max"], 15);
  EXPECT_EQ(j["details"]["min"], delta(7));
}
