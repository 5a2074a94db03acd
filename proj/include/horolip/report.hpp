#pragma once

#include <string>
#include <vector>

#include "horolip/json_io.hpp"

namespace horolip {

enum ExitCode : int {
    exit_ok = 0,
    exit_assertion_failure = 1,
    exit_config_error = 2,
    exit_budget_exhausted = 3,
};

/** One checked inequality or equality, with both sides recorded. */
struct Check {
    std::string name;
    bool pass = false;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string relation = "<=";
    std::string note;

    Json to_json() const
    {
        Json j;
        j["name"] = name;
        j["pass"] = pass;
        j["lhs"] = lhs;
        j["relation"] = relation;
        j["rhs"] = rhs;
        if (!note.empty()) j["note"] = note;
        return j;
    }
};

/**
 * Command report: inputs echo, results, per-check verdicts and diagnostics.
 * Serialization is deterministic, so a fixed config and seed reproduce the
 * bytes exactly.
 */
struct Report {
    std::string command;
    Json inputs = Json::object();
    Json results = Json::object();
    Json diagnostics = Json::object();
    std::vector<Check> checks;

    void check_leq(const std::string& name, double lhs, double rhs, const std::string& note = "")
    {
        checks.push_back(Check{name, lhs <= rhs, lhs, rhs, "<=", note});
    }

    void check_eq(const std::string& name, double lhs, double rhs, double tol, const std::string& note = "")
    {
        checks.push_back(Check{name, std::abs(lhs - rhs) <= tol, lhs, rhs, "==", note});
    }

    void check_true(const std::string& name, bool ok, const std::string& note = "")
    {
        checks.push_back(Check{name, ok, ok ? 1.0 : 0.0, 1.0, "==", note});
    }

    bool all_pass() const
    {
        for (const Check& c : checks)
            if (!c.pass) return false;
        return true;
    }

    Json to_json() const
    {
        Json j;
        j["command"] = command;
        j["inputs"] = inputs;
        j["results"] = results;
        Json cs = Json::array();
        for (const Check& c : checks) cs.push_back(c.to_json());
        j["checks"] = std::move(cs);
        j["diagnostics"] = diagnostics;
        j["pass"] = all_pass();
        return j;
    }
};

} // namespace horolip
