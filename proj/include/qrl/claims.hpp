#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qrl {

// Verification suite: every documented behaviour of the scenario family is
// restated here as an executable claim and checked against independently
// constructed expectations (closed-form states, hand-frozen tables, brute
// force enumeration).  `qrl verify` and the acceptance runner both drive
// this suite.

struct ClaimCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ClaimGroup {
    int number = 0;
    std::string id;
    std::string title;
    std::vector<ClaimCheck> checks;
    double seconds = 0.0;
    double time_limit = 0.0;  // 0 means untimed
    bool pass = false;
};

struct ClaimOptions {
    std::string filter;               // substring match on id; empty runs all
    std::string circuits_dir = "circuits";
};

std::vector<ClaimGroup> run_claim_suite(const ClaimOptions& options = {});

bool all_claims_pass(const std::vector<ClaimGroup>& groups);

// One line per group, sub-check details indented underneath failures (or
// everywhere when verbose).
void print_claim_groups(std::ostream& out, const std::vector<ClaimGroup>& groups, bool verbose);

}  // namespace qrl
