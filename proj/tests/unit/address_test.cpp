#include <gtest/gtest.h>

#include "cellflow/address.hpp"

using namespace cellflow;

TEST(Address, ColumnNamesRoundTripOverTheWholeGrid) {
    for (int c = 1; c <= kMaxColumns; ++c) {
        auto name = column_name(c);
        ASSERT_EQ(column_index(name), c) << name;
    }
    EXPECT_EQ(column_name(1), "A");
    EXPECT_EQ(column_name(26), "Z");
    EXPECT_EQ(column_name(27), "AA");
    EXPECT_EQ(column_name(kMaxColumns), "XFD");
}

TEST(Address, ColumnIndexRejectsOutOfGrid) {
    EXPECT_FALSE(column_index("XFE"));
    EXPECT_FALSE(column_index("AAAA"));
    EXPECT_FALSE(column_index(""));
    EXPECT_FALSE(column_index("A1"));
    EXPECT_EQ(column_index("xfd"), kMaxColumns);
}

TEST(Address, ParseA1) {
    EXPECT_EQ(parse_a1("B3"), (Coord{3, 2}));
    EXPECT_EQ(parse_a1("$B$3"), (Coord{3, 2}));
    EXPECT_EQ(parse_a1("XFD1048576"), (Coord{kMaxRows, kMaxColumns}));
    EXPECT_FALSE(parse_a1("A0"));
    EXPECT_FALSE(parse_a1("A1048577"));
    EXPECT_FALSE(parse_a1("XFE1"));
    EXPECT_FALSE(parse_a1("1A"));
    EXPECT_FALSE(parse_a1("A"));
    EXPECT_EQ(a1(Coord{3, 2}), "B3");
    EXPECT_EQ(a1(Rect{1, 1, 4, 3}), "A1:C4");
}

TEST(Address, RectGeometry) {
    Rect a{1, 1, 2, 2};
    EXPECT_TRUE(a.touches(Rect{3, 3, 4, 4}));   // diagonal corner
    EXPECT_TRUE(a.touches(Rect{1, 3, 1, 3}));   // shared edge
    EXPECT_FALSE(a.touches(Rect{4, 1, 5, 2}));  // one empty row between
    EXPECT_FALSE(a.intersects(Rect{3, 3, 4, 4}));
    EXPECT_EQ(a.united(Rect{5, 4, 6, 5}), (Rect{1, 1, 6, 5}));
    EXPECT_EQ((Rect{1, 1, kMaxRows, 1}).area(), kMaxRows);
}

TEST(Address, CellAddressComparesSheetsIgnoringCase) {
    CellAddress a{"Exam", 2, 3};
    CellAddress b{"exam", 2, 3};
    EXPECT_EQ(a, b);
    EXPECT_EQ(a <=> b, std::strong_ordering::equal);
    EXPECT_LT((CellAddress{"a", 5, 1}), (CellAddress{"A", 1, 2}));  // row-major within a sheet
    EXPECT_LT((CellAddress{"a", 9, 9}), (CellAddress{"b", 1, 1}));
    EXPECT_EQ(to_string(a), "Exam!B3");
}
