#include "henon/io.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace henon;

TEST(Json, BoundReport) {
    const auto j = to_json(verify_tail_growth(3, 20));
    EXPECT_EQ(j["lemma"], "tail_growth");
    EXPECT_EQ(j["worst_margin"], "0");
    EXPECT_EQ(j["worst_point"], "5");
    EXPECT_EQ(j["pass"], true);
    EXPECT_FALSE(j.contains("prime"));
    const auto p = to_json(padic_escape_check_rd(2, 3));
    EXPECT_EQ(p["prime"], 3);
    EXPECT_EQ(p["grid"]["points"], 200);
}

TEST(Json, RationalStringsRoundTrip) {
    const auto r = verify_cd_bounds(7, BoundKind::cd_sup);
    const auto j = to_json(r);
    EXPECT_EQ(parse_rational(j["worst_margin"].get<std::string>()), r.worst_margin);
}

TEST(Json, CyclesAndReport) {
    const auto e = enumerate_periodic(7, 0, Orientation::standard, 1);
    const auto j = to_json(e.report);
    EXPECT_EQ(j["count"], 49);
    EXPECT_EQ(j["total_periodic"], 115);
    EXPECT_EQ(j["longest_cycle"], 22);
    std::int64_t sum = 0;
    for (const auto& [len, n] : j["histogram"].items()) sum += std::stoll(len) * n.get<std::int64_t>();
    EXPECT_EQ(sum, 115);
    const auto c = to_json(e.cycles.front());
    EXPECT_EQ(c["length"].get<std::size_t>(), c["points"].size());
}

TEST(Csv, PeriodicRow) {
    const auto e = enumerate_periodic(7, 0, Orientation::standard, 1);
    const std::string row = periodic_csv_row(e.report, false);
    EXPECT_EQ(row.rfind("7,1,0,49,22,", 0), 0u) << row;
    EXPECT_NE(row.find(",0,115"), std::string::npos) << row;
    EXPECT_EQ(std::string(periodic_csv_header).rfind("d,d_mod_6,c,count,longest_cycle,n_cycles,elapsed_ms", 0), 0u);
}

TEST(Csv, FloatsRoundTrip) {
    for (double v : {0.1, -1.0 / 3.0, 1e-300, 123456.789}) EXPECT_EQ(std::stod(format_double(v)), v);
    const AtlasPoint p{1, -2, 12, 5, 0.25, -1.0 / 3.0};
    EXPECT_EQ(atlas_csv_row(p), "1,-2,12,5,0.25," + format_double(-1.0 / 3.0));
}

TEST(Svg, ScatterClipsAndColours) {
    SvgScatter svg(-10, 10, 100);
    svg.add(0, 0, 1);
    svg.add(20, 0, 5);
    svg.add(-5, 5, 20);
    EXPECT_EQ(svg.size(), 2u);
    std::ostringstream os;
    svg.write(os);
    const std::string out = os.str();
    EXPECT_NE(out.find("<svg"), std::string::npos);
    EXPECT_NE(out.find(period_colour(1)), std::string::npos);
    EXPECT_NE(out.find(period_colour(20)), std::string::npos);
    EXPECT_EQ(out.find(period_colour(5)), std::string::npos);
}
