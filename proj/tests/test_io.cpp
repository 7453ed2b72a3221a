#include <gtest/gtest.h>

#include <bit>
#include <cstdint>
#include <random>
#include <regex>
#include <set>

#include "expsum/csv.hpp"
#include "expsum/model_document.hpp"
#include "expsum/prony.hpp"
#include "expsum/reference_models.hpp"
#include "expsum/svg_plot.hpp"
#include "test_support.hpp"

namespace expsum {
namespace {

using namespace std::complex_literals;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorKind::IoError;
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

TEST(Csv, TValueHeader) {
  const auto s = parse_csv("t,value\n1,37.33\n2,40.33");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], (DataPoint{1, 37.33}));
  EXPECT_EQ(s[1], (DataPoint{2, 40.33}));
}

TEST(Csv, YearHeaderWithOrigin) {
  const auto s = parse_csv("year,value\n1992,37.33\n", {1991.0});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], (DataPoint{1, 37.33}));
  EXPECT_EQ(kind_of([] { parse_csv("year,value\n1992,37.33\n"); }), ErrorKind::ParseError);
}

TEST(Csv, SemicolonAndDecimalComma) {
  const auto s = parse_csv("\xEF\xBB\xBFt;value\r\n3;40,12\r\n4 ; 43,17\r\n\r\n");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], (DataPoint{3, 40.12}));
  EXPECT_EQ(s[1], (DataPoint{4, 43.17}));
}

TEST(Csv, Errors) {
  EXPECT_EQ(kind_of([] { parse_csv(""); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_csv("x,y\n1,2"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_csv("t,value\n1,2,3"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_csv("t,value\n1,abc"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_csv("t,value\n2,1\n1,1"); }), ErrorKind::NonIncreasingAbscissa);
  EXPECT_EQ(kind_of([] { parse_csv("t,value\n"); }), ErrorKind::EmptySeries);
  try {
    parse_csv("t,value\n1,2\n2,oops\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("row 3, column 2"), std::string::npos) << e.what();
  }
  EXPECT_EQ(kind_of([] { ingest_csv("/nonexistent/file.csv"); }), ErrorKind::IoError);
}

TEST(CsvProperty, ExportThenIngestIsIdentity) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = std::uniform_int_distribution<std::size_t>(1, 30)(rng);
    const auto s = testing::random_series(rng, n, 1e6);
    EXPECT_EQ(parse_csv(series_to_csv(s), {}, s.name()), s);
  }
}

TEST(ModelDocument, RoundTripIsBitExact) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> t_dist(-10.0, 40.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int p = std::uniform_int_distribution<int>(1, 6)(rng);
    const auto truth = testing::random_real_model(rng, p);
    const auto model = fit(testing::sample_model(truth, 2 * p), {p, FitMode::Exact});
    const auto doc = ModelDocument::from_model(model, {{"source", "synthetic"}, {"note", "a \"quoted\" value"}});
    const auto parsed = parse_model_document(serialize_model(doc));
    EXPECT_EQ(parsed, doc);
    const auto back = parsed.to_model();
    for (int i = 0; i < 100; ++i) {
      const double t = t_dist(rng);
      const auto a = evaluate(model, t);
      const auto b = evaluate(back, t);
      EXPECT_EQ(std::bit_cast<std::uint64_t>(a.real()), std::bit_cast<std::uint64_t>(b.real()));
      EXPECT_EQ(std::bit_cast<std::uint64_t>(a.imag()), std::bit_cast<std::uint64_t>(b.imag()));
    }
  }
}

TEST(ModelDocument, NegativeZeroSurvives) {
  ModelDocument doc;
  doc.terms.push_back({Complex(-0.0, 1.0), Complex(0.5, -0.0)});
  const auto parsed = parse_model_document(serialize_model(doc));
  EXPECT_TRUE(std::signbit(parsed.terms[0].amplitude.real()));
  EXPECT_TRUE(std::signbit(parsed.terms[0].exponent.imag()));
}

TEST(ModelDocument, SerializedForm) {
  const auto doc = ModelDocument::from_model(ExponentialModel({{3.0, 0.1}}), {{"p", "1"}});
  EXPECT_EQ(serialize_model(doc),
            "{\n"
            "  \"schema_version\": 1,\n"
            "  \"dt\": 1,\n"
            "  \"terms\": [\n"
            "    {\"amp\": [3, 0], \"exp\": [0.10000000000000001, 0]}\n"
            "  ],\n"
            "  \"meta\": {\n"
            "    \"p\": \"1\"\n"
            "  }\n"
            "}\n");
}

TEST(ModelDocument, RejectsMalformedInput) {
  EXPECT_EQ(kind_of([] { parse_model_document(""); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_model_document("[]"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_model_document(R"({"schema_version":1,"dt":1,"terms":[],"extra":0})"); }),
            ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_model_document(R"({"schema_version":2,"dt":1,"terms":[]})"); }),
            ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_model_document(R"({"schema_version":1,"terms":[]})"); }),
            ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] {
              parse_model_document(
                  R"({"schema_version":1,"dt":1,"terms":[{"amp":[1,0],"exp":[0,0],"x":1}]})");
            }),
            ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] {
              parse_model_document(R"({"schema_version":1,"dt":1,"terms":[{"amp":[1],"exp":[0,0]}]})");
            }),
            ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] {
              parse_model_document(R"({"schema_version":1,"dt":1,"terms":[],"meta":{"a":1}})");
            }),
            ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] {
              parse_model_document(R"({"schema_version":1,"dt":1,"terms":[]})").to_model();
            }),
            ErrorKind::InvalidModel);
}

TEST(SvgPlot, MarkersAndPolyline) {
  const auto svg = render_plot_svg(published_gdp_model(), load_fixture("gdp_hu_eq1"));
  EXPECT_EQ(count_of(svg, "class=\"marker\""), 30u);
  EXPECT_EQ(count_of(svg, "<polyline"), 1u);
  // 29 units at 10 samples per unit, both ends included.
  const auto start = svg.find("points=\"");
  const auto stop = svg.find('"', start + 8);
  const auto points = svg.substr(start + 8, stop - start - 8);
  EXPECT_EQ(count_of(points, ",") , 291u);
  EXPECT_EQ(count_of(svg, "class=\"label\""), 4u);
  EXPECT_EQ(svg, render_plot_svg(published_gdp_model(), load_fixture("gdp_hu_eq1")));
  EXPECT_NE(svg.find(">1<"), std::string::npos);
  EXPECT_NE(svg.find(">30<"), std::string::npos);
}

TEST(SvgPlot, SinglePointFlatCurve) {
  const auto svg = render_plot_svg(ExponentialModel({{5.0, 0.0}}), validate_series({{3, 5}}));
  EXPECT_EQ(count_of(svg, "class=\"marker\""), 1u);
  EXPECT_EQ(count_of(svg, "<polyline"), 1u);
  const auto start = svg.find("points=\"") + 8;
  const auto points = svg.substr(start, svg.find('"', start) - start);
  std::regex pair(R"(([-0-9.]+),([-0-9.]+))");
  std::set<std::string> ys;
  for (auto it = std::sregex_iterator(points.begin(), points.end(), pair); it != std::sregex_iterator(); ++it) {
    ys.insert((*it)[2]);
  }
  EXPECT_EQ(ys.size(), 1u);
}

TEST(Format, SeventeenDigits) {
  EXPECT_EQ(format_double(37.33), "37.329999999999998");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-0.0), "-0.0");
  EXPECT_EQ(parse_double("+1.5"), 1.5);
  EXPECT_FALSE(parse_double("1.5x"));
  EXPECT_FALSE(parse_double(""));
}

}  // namespace
}  // namespace expsum
