#include <clover/report.hpp>

#include <iomanip>
#include <map>
#include <sstream>

namespace clover {

std::string_view status_name(Status s)
{
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "fail";
    case Status::outside_zone:
        return "outside-trusted-zone";
    }
    return "?";
}

void VerificationReport::add(std::string check, nlohmann::json params, Status status, std::string witness)
{
    records_.push_back({std::move(check), std::move(params), status, std::move(witness)});
}

void VerificationReport::append(const VerificationReport &other)
{
    records_.insert(records_.end(), other.records_.begin(), other.records_.end());
}

std::size_t VerificationReport::count(Status s) const
{
    std::size_t n = 0;
    for (const auto &r : records_) {
        n += r.status == s;
    }
    return n;
}

std::string VerificationReport::json_lines() const
{
    std::string out;
    for (const auto &r : records_) {
        nlohmann::json j = {{"suite", suite_},
                            {"check", r.check},
                            {"params", r.params},
                            {"status", std::string(status_name(r.status))}};
        if (!r.witness.empty()) {
            j["witness"] = r.witness;
        }
        out += j.dump() + "\n";
    }
    if (!summary_.empty()) {
        out += nlohmann::json{{"suite", suite_}, {"summary", summary_}}.dump() + "\n";
    }
    return out;
}

std::string VerificationReport::summary_table() const
{
    std::map<std::string, std::array<std::size_t, 3>> rows;
    std::vector<std::string> order;
    for (const auto &r : records_) {
        auto [it, fresh] = rows.try_emplace(r.check, std::array<std::size_t, 3>{0, 0, 0});
        if (fresh) {
            order.push_back(r.check);
        }
        ++it->second[static_cast<std::size_t>(r.status)];
    }
    std::size_t width = 5;
    for (const auto &name : order) {
        width = std::max(width, name.size());
    }
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(width)) << "check" << "  " << std::right << std::setw(7) << "pass"
       << std::setw(7) << "fail" << std::setw(9) << "outside" << "\n";
    for (const auto &name : order) {
        const auto &c = rows[name];
        os << std::left << std::setw(static_cast<int>(width)) << name << "  " << std::right << std::setw(7) << c[0]
           << std::setw(7) << c[1] << std::setw(9) << c[2] << "\n";
    }
    return os.str();
}

} // namespace clover
