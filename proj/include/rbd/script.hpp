#pragma once

// The construction-script language: one statement per line, '#' comments.
//
//   surface p2
//   curve NAME = CLASS
//   blowup ENAME at {NAME[*MULT], ...}
//   chain CNAME = [NAME, ...]
//   assert CLASS == CLASS
//   connects ENAME : CNAME(end|mid) -- CNAME(end|mid) [power INT]
//   contract CNAME, ...
//   expect KEY [SUBJECT] = VALUE
//
// CLASS is a signed sum of terms `[COEF[*]]ATOM` with COEF an integer or a
// fraction p/q and ATOM one of h, K, a curve name, exc(ENAME) or a
// parenthesized CLASS. A bare 0 is the zero class.

#include "rbd/builder.hpp"
#include "rbd/chains.hpp"
#include "rbd/rational.hpp"
#include "rbd/topology.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rbd {

struct SourcePos {
    std::size_t line = 0;
    std::size_t column = 0;
};

class ParseError : public std::runtime_error {
public:
    ParseError(SourcePos pos, const std::string& message);
    SourcePos pos() const { return pos_; }
    const std::string& detail() const { return detail_; }

private:
    SourcePos pos_;
    std::string detail_;
};

struct SurfaceStmt {
    friend bool operator==(const SurfaceStmt&, const SurfaceStmt&) = default;
};

struct CurveStmt {
    std::string name;
    ClassExpr cls;
    friend bool operator==(const CurveStmt&, const CurveStmt&) = default;
};

struct BlowupStmt {
    std::string name;
    std::vector<Incidence> incidences;
    friend bool operator==(const BlowupStmt&, const BlowupStmt&) = default;
};

struct ChainStmt {
    std::string name;
    std::vector<std::string> curves;
    friend bool operator==(const ChainStmt&, const ChainStmt&) = default;
};

struct AssertStmt {
    ClassExpr lhs;
    ClassExpr rhs;
    friend bool operator==(const AssertStmt&, const AssertStmt&) = default;
};

struct ConnectSide {
    std::string chain;
    Attachment attachment = Attachment::End;
    friend bool operator==(const ConnectSide&, const ConnectSide&) = default;
};

struct ConnectsStmt {
    std::string witness;
    ConnectSide a;
    ConnectSide b;
    std::optional<std::int64_t> power; // applies to the single mid side
    friend bool operator==(const ConnectsStmt&, const ConnectsStmt&) = default;
};

struct ContractStmt {
    std::vector<std::string> chains;
    friend bool operator==(const ContractStmt&, const ContractStmt&) = default;
};

enum class ExpectKey {
    KsqAmbient,
    KsqX,
    Nef,
    Pi1,
    Rank,
    Discrepancy,
    NefVal,
    Pg,
    Chi2K,
    Chain,
    Cpq,
    Pullback,
};

const char* to_string(ExpectKey k);

using ExpectValue = std::variant<Rational, bool, std::vector<Rational>, std::vector<std::int64_t>, CpqParams, ClassExpr>;

/// pi1 expectations store PASS as true.
struct ExpectStmt {
    ExpectKey key = ExpectKey::KsqX;
    std::string subject; // chain or curve name for keyed forms
    ExpectValue value;
    friend bool operator==(const ExpectStmt&, const ExpectStmt&) = default;
};

using StatementBody =
    std::variant<SurfaceStmt, CurveStmt, BlowupStmt, ChainStmt, AssertStmt, ConnectsStmt, ContractStmt, ExpectStmt>;

struct Statement {
    SourcePos pos;
    StatementBody body;
    /// Positions are diagnostics, not content.
    friend bool operator==(const Statement& a, const Statement& b) { return a.body == b.body; }
};

struct Script {
    std::string id;
    std::vector<Statement> statements;
    friend bool operator==(const Script& a, const Script& b) { return a.statements == b.statements; }
};

Script parse_script(std::string_view text, std::string id = "<input>");
Script load_script(const std::string& path);

std::string serialize(const Script& s);
std::string format_class(const ClassExpr& e);
std::string format_statement(const StatementBody& body);

} // namespace rbd
