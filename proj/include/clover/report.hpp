#ifndef CLOVER_REPORT_HPP
#define CLOVER_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace clover {

enum class Status { pass, fail, outside_zone };

std::string_view status_name(Status s);

struct CheckRecord {
    std::string check;
    nlohmann::json params = nlohmann::json::object();
    Status status = Status::pass;
    // Rendered inputs and elements; filled for failures.
    std::string witness;
};

class VerificationReport {
public:
    explicit VerificationReport(std::string suite) : suite_(std::move(suite)) {}

    const std::string &suite() const noexcept { return suite_; }
    const std::vector<CheckRecord> &records() const noexcept { return records_; }

    void add(CheckRecord r) { records_.push_back(std::move(r)); }
    void add(std::string check, nlohmann::json params, Status status, std::string witness = {});
    void append(const VerificationReport &other);

    std::size_t count(Status s) const;
    bool any_fail() const { return count(Status::fail) > 0; }

    // Suite-level facts that are not individual checks (e.g. sampling rates).
    nlohmann::json &summary() { return summary_; }
    const nlohmann::json &summary() const { return summary_; }

    // One JSON object per line: suite, check, params, status, witness.
    std::string json_lines() const;
    // Per-check pass/fail/outside counts.
    std::string summary_table() const;

private:
    std::string suite_;
    std::vector<CheckRecord> records_;
    nlohmann::json summary_ = nlohmann::json::object();
};

} // namespace clover

#endif
