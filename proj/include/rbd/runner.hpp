#pragma once

// Executes a parsed script: builder statements in order, then chain checks,
// contraction, blow-down, the pi_1 certificate and the numerology, and
// finally every expectation.

#include "rbd/contraction.hpp"
#include "rbd/script.hpp"
#include "rbd/topology.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbd {

/// A module error raised while executing a statement.
class RunError : public std::runtime_error {
public:
    RunError(SourcePos pos, const std::string& message);
    SourcePos pos() const { return pos_; }

private:
    SourcePos pos_;
};

struct AssertResult {
    SourcePos pos;
    std::string text;
    bool ok = false;
};

struct ExpectResult {
    SourcePos pos;
    std::string label;    // key plus subject
    std::string expected;
    std::string actual;   // "n/a" when the quantity was not computed
    bool ok = false;
};

struct Pi1Report {
    Pi1Graph graph;
    Pi1Certificate certificate;
};

struct Report {
    std::string id;
    std::size_t rank = 0;
    std::int64_t ksq_ambient = 0;
    std::vector<std::string> basis;
    std::vector<AssertResult> asserts;

    /// Every declared chain, in declaration order.
    std::vector<ChainContraction> chains;
    std::vector<std::string> contracted;
    std::optional<ContractionReport> contraction;

    std::optional<FourManifoldInvariants> ambient;
    std::optional<FourManifoldInvariants> blowdown;
    std::optional<SmoothingInvariants> smoothing;
    std::optional<Pi1Report> pi1;

    std::vector<std::string> notes;
    std::vector<std::string> failures;
    std::vector<ExpectResult> expectations;

    bool passed() const;
};

Report run(const Script& script);

} // namespace rbd
