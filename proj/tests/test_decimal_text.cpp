#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "heats/decimal.hpp"
#include "heats/text.hpp"

using heats::decimal::parse;
using heats::decimal::parse_integer;
using heats::decimal::round_fixed;
using heats::decimal::round_trimmed;

TEST(DecimalParse, AcceptsPlainLiterals) {
  EXPECT_EQ(*parse("0.80"), 0.8);
  EXPECT_EQ(*parse("-21"), -21.0);
  EXPECT_EQ(*parse("+1.5"), 1.5);
  EXPECT_EQ(*parse("1e3"), 1000.0);
}

TEST(DecimalParse, RejectsGarbage) {
  EXPECT_FALSE(parse(""));
  EXPECT_FALSE(parse("abc"));
  EXPECT_FALSE(parse("1.0x"));
  EXPECT_FALSE(parse("0,80"));
  EXPECT_FALSE(parse("nan"));
  EXPECT_FALSE(parse("inf"));
  EXPECT_FALSE(parse(" 1"));
  EXPECT_FALSE(parse_integer("1.5"));
  EXPECT_EQ(*parse_integer("12"), 12);
}

TEST(DecimalRound, DisplayGoldens) {
  EXPECT_EQ(round_fixed(9.471, 4), "9.4710");
  EXPECT_EQ(round_fixed(8.14506, 4), "8.1451");
  EXPECT_EQ(round_fixed(11.285 * 0.86, 4), "9.7051");
  EXPECT_EQ(round_fixed(0.0, 4), "0.0000");
  EXPECT_EQ(round_fixed(16.0, 2), "16.00");
  EXPECT_EQ(round_fixed(1234.5, 0), "1234");
}

TEST(DecimalRound, HalfEvenOnTies) {
  EXPECT_EQ(round_fixed(0.00005, 4), "0.0000");
  EXPECT_EQ(round_fixed(0.00015, 4), "0.0002");
  EXPECT_EQ(round_fixed(0.00025, 4), "0.0002");
  EXPECT_EQ(round_fixed(2.5, 0), "2");
  EXPECT_EQ(round_fixed(3.5, 0), "4");
  EXPECT_EQ(round_fixed(-1.23455, 4), "-1.2346");
  EXPECT_EQ(round_fixed(0.000051, 4), "0.0001");
}

TEST(DecimalRound, NoNegativeZero) {
  EXPECT_EQ(round_fixed(-0.00001, 4), "0.0000");
  EXPECT_EQ(round_fixed(-0.0, 2), "0.00");
}

TEST(DecimalRound, LargeAndTinyMagnitudes) {
  EXPECT_EQ(round_fixed(1e21, 1), "1000000000000000000000.0");
  EXPECT_EQ(round_fixed(1e-9, 4), "0.0000");
  EXPECT_EQ(round_fixed(0.99996, 4), "1.0000");
}

TEST(DecimalRound, Trimmed) {
  EXPECT_EQ(round_trimmed(359.8, 6), "359.8");
  EXPECT_EQ(round_trimmed(-21.0, 6), "-21");
  EXPECT_EQ(round_trimmed(0.1 + 0.2, 6), "0.3");
}

// Away from ties, decimal rounding must agree with printf's rounding of the
// exact binary value.
TEST(DecimalRound, MatchesPrintfAwayFromTies) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> value(-1e5, 1e5);
  int checked = 0;
  while (checked < 5000) {
    double v = value(rng);
    double scaled = v * 1e4;
    double frac = scaled - std::floor(scaled);
    if (std::abs(frac - 0.5) < 1e-3) continue;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string expected = buf;
    if (expected == "-0.0000") expected = "0.0000";
    ASSERT_EQ(round_fixed(v, 4), expected) << v;
    ++checked;
  }
}

TEST(Text, TrimAndFold) {
  EXPECT_EQ(heats::text::trim("  Arad \t"), "Arad");
  EXPECT_EQ(heats::text::trim(""), "");
  EXPECT_EQ(heats::text::fold_case("BRAȘOV"), "brașov");
  EXPECT_EQ(heats::text::fold_case("TÂRGU JIU"), "târgu jiu");
  EXPECT_EQ(heats::text::fold_case("REȘIȚA"), "reșița");
  EXPECT_EQ(heats::text::fold_case("ŞŢĂÎ"), "şţăî");
}

TEST(Text, DiacriticsAreNotTransliterated) {
  EXPECT_NE(heats::text::match_key("Brasov"), heats::text::match_key("Brașov"));
  EXPECT_EQ(heats::text::match_key(" timișoara "), heats::text::match_key("Timișoara"));
}

TEST(Text, InvalidUtf8PassesThrough) {
  std::string bad = "A\xC3";
  EXPECT_EQ(heats::text::fold_case(bad), "a\xC3");
}
