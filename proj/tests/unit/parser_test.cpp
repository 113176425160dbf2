#include <gtest/gtest.h>

#include "cellflow/error.hpp"
#include "cellflow/formula.hpp"
#include "random_formula.hpp"

using namespace cellflow;
using namespace cellflow::formula;
using cellflow::testing::FormulaGenerator;

namespace {

Expr num(double v) { return NumberLit{v}; }
Expr cell(int col, int row, std::optional<std::string> sheet = std::nullopt) {
    return CellRef{std::move(sheet), col, row, false, false};
}
Expr bin(BinaryOperator op, Expr l, Expr r) { return BinaryOp{op, std::move(l), std::move(r)}; }
Expr un(UnaryOperator op, Expr e) { return UnaryOp{op, std::move(e)}; }

} // namespace

TEST(Parser, MultiplicationBindsTighterThanAddition) {
    EXPECT_EQ(parse("2+3*4"), bin(BinaryOperator::Add, num(2), bin(BinaryOperator::Mul, num(3), num(4))));
}

TEST(Parser, NegationBindsTighterThanPower) {
    // Desktop spreadsheets rank negation above '^' in their documented operator
    // precedence, so =-2^2 evaluates to 4, not -4. The parser follows them.
    EXPECT_EQ(parse("-2^2"), bin(BinaryOperator::Pow, un(UnaryOperator::Neg, num(2)), num(2)));
    EXPECT_EQ(parse("2^-2"), bin(BinaryOperator::Pow, num(2), un(UnaryOperator::Neg, num(2))));
}

TEST(Parser, FunctionWithCrossSheetArgument) {
    EXPECT_EQ(parse("IF(A1>0,Sheet2!B1,0)"),
              Expr(FunctionCall{"IF", {bin(BinaryOperator::Gt, cell(1, 1), num(0)), cell(2, 1, "Sheet2"), num(0)}}));
}

TEST(Parser, Associativity) {
    EXPECT_EQ(parse("1-2-3"), bin(BinaryOperator::Sub, bin(BinaryOperator::Sub, num(1), num(2)), num(3)));
    EXPECT_EQ(parse("2^3^2"), bin(BinaryOperator::Pow, num(2), bin(BinaryOperator::Pow, num(3), num(2))));
    EXPECT_EQ(parse("1=2=3"), bin(BinaryOperator::Eq, bin(BinaryOperator::Eq, num(1), num(2)), num(3)));
}

TEST(Parser, PrecedenceLadder) {
    // comparison < & < +- < */ < ^ < prefix < postfix
    EXPECT_EQ(parse("1<2&3+4*5^-6%"),
              bin(BinaryOperator::Lt, num(1),
                  bin(BinaryOperator::Concat, num(2),
                      bin(BinaryOperator::Add, num(3),
                          bin(BinaryOperator::Mul, num(4),
                              bin(BinaryOperator::Pow, num(5),
                                  un(UnaryOperator::Neg, un(UnaryOperator::Percent, num(6)))))))));
    EXPECT_EQ(parse("(1+2)*3"), bin(BinaryOperator::Mul, bin(BinaryOperator::Add, num(1), num(2)), num(3)));
}

TEST(Parser, ReferencesAndLiterals) {
    EXPECT_EQ(parse("$B$2"), Expr(CellRef{std::nullopt, 2, 2, true, true}));
    EXPECT_EQ(parse("'My Sheet'!A1:$C3"),
              Expr(RangeRef{{std::string("My Sheet"), 1, 1, false, false}, {std::string("My Sheet"), 3, 3, true, false}}));
    EXPECT_EQ(parse("A:C"), Expr(LineRangeRef{std::nullopt, LineRangeRef::Axis::Column, 1, 3, false, false}));
    EXPECT_EQ(parse("S!$2:5"), Expr(LineRangeRef{std::string("S"), LineRangeRef::Axis::Row, 2, 5, true, false}));
    EXPECT_EQ(parse("[Book2]Sheet1!A1"), Expr(ExternalRef{"[Book2]Sheet1", "A1"}));
    EXPECT_EQ(parse("TaxRate"), Expr(NameRef{"TaxRate"}));
    EXPECT_EQ(parse("\"x\"&TRUE"), bin(BinaryOperator::Concat, Expr(TextLit{"x"}), Expr(BoolLit{true})));
    EXPECT_EQ(parse("#REF!"), Expr(ErrorLit{"#REF!"}));
    EXPECT_EQ(parse("Sheet1!#REF!"), Expr(ErrorLit{"#REF!"}));
}

TEST(Parser, FunctionsAreUppercasedAndMayBeUnknown) {
    EXPECT_EQ(parse("sum()"), Expr(FunctionCall{"SUM", {}}));
    EXPECT_EQ(parse("FOOBAR(1)"), Expr(FunctionCall{"FOOBAR", {num(1)}}));
    EXPECT_EQ(parse("IF(A1,,0)"), Expr(FunctionCall{"IF", {cell(1, 1), MissingArg{}, num(0)}}));
    EXPECT_EQ(parse("IF(A1,1,)"), Expr(FunctionCall{"IF", {cell(1, 1), num(1), MissingArg{}}}));
}

TEST(Parser, RejectedSyntax) {
    struct Case {
        const char* text;
        std::size_t offset;
    };
    const Case cases[] = {
        {"{1,2}", 0},            // array literal
        {"A1 B1", 3},            // intersection
        {"SUM((A1,B1))", 7},     // union
        {"Table1[Col]", 6},      // structured reference
        {"R1C1", 0},             // R1C1 style
        {"Sheet1:Sheet3!A1", 6}, // 3-D reference
        {"1+", 2},
        {"(1", 2},
        {"SUM(1", 5},
        {"1)", 1},
        {"", 0},
        {"A1:Sheet2!B2", 3},
    };
    for (const auto& c : cases) {
        try {
            parse(c.text);
            ADD_FAILURE() << "accepted " << c.text;
        } catch (const ParseError& e) {
            EXPECT_EQ(e.offset(), c.offset) << c.text << ": " << e.what();
            EXPECT_FALSE(e.expected().empty());
        } catch (const LexError& e) {
            ADD_FAILURE() << c.text << ": " << e.what();
        }
    }
}

TEST(Printer, InsertsOnlyRequiredParentheses) {
    for (const char* text : {"2+3*4", "(2+3)*4", "1-(2-3)", "1-2-3", "2^3^2", "(2^3)^2", "-2^2", "-(2^2)",
                             "(-A1)%", "-A1%", "A1&B1=C1", "A1&(B1=C1)", "SUM(A1:B2,,'My Sheet'!C3)",
                             "\"a\"\"b\"", "'O''Brien'!A1", "'2019'!A1", "'A1'!B2", "[Book2]Sheet1!A1:B2"}) {
        EXPECT_EQ(to_formula(parse(text)), text);
    }
    EXPECT_EQ(to_formula(parse(" 1 +  2 ")), "1+2");
    EXPECT_EQ(to_formula(parse("((A1))")), "A1");
    EXPECT_EQ(to_formula(parse("a1+sheet1!b2")), "A1+sheet1!B2");
}

TEST(Printer, SheetQuoting) {
    EXPECT_EQ(quote_sheet_name("Data"), "Data");
    EXPECT_EQ(quote_sheet_name("My Sheet"), "'My Sheet'");
    EXPECT_EQ(quote_sheet_name("O'Brien"), "'O''Brien'");
    EXPECT_EQ(quote_sheet_name("2019"), "'2019'");
    EXPECT_EQ(quote_sheet_name("A1"), "'A1'");
    EXPECT_EQ(quote_sheet_name("lab-osiris"), "'lab-osiris'");
    EXPECT_EQ(quote_sheet_name("TRUE"), "'TRUE'");
}

TEST(Printer, ShiftRelativeReferences) {
    EXPECT_EQ(shift_relative_refs("A1*2+$C$1+B$3+$D4", 2, 1), "B3*2+$C$1+C$3+$D6");
    EXPECT_EQ(shift_relative_refs("SUM(A1:A3)&\"A1\"", 1, 0), "SUM(A2:A4)&\"A1\"");
    EXPECT_EQ(shift_relative_refs("A1", -1, 0), "#REF!");
    EXPECT_EQ(shift_relative_refs("Sheet2!B2", 0, 0), "Sheet2!B2");
}

TEST(ParserProperties, PrintParseRoundTrip) {
    FormulaGenerator gen(20261015);
    for (int i = 0; i < 3000; ++i) {
        Expr e = gen.expr();
        std::string text = to_formula(e);
        Expr back = [&] {
            try {
                return parse(text);
            } catch (const Error& err) {
                ADD_FAILURE() << text << ": " << err.what();
                return e;
            }
        }();
        ASSERT_EQ(back, e) << text;
        ASSERT_EQ(to_formula(back), text);
    }
}
