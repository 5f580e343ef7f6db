#ifndef AUTOVR_SINKS_HPP
#define AUTOVR_SINKS_HPP

#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "autovr/bundle.hpp"

// Sensitive-data-flow audit log: full append-only log plus a unique set
// keyed by (data_type, host), category classification, and fault records.

namespace autovr {

enum class FlowCategory { Pii, Fingerprinting, VrSensory, Other };

std::string to_string(FlowCategory c);

struct DataFlowRecord {
    std::string data_type;
    std::string host;
    std::string payload_digest; // fnv1a-64 hex of the payload bytes
    FlowCategory category = FlowCategory::Other;
    bool unknown_type = false; // label missing from the category table
    std::string event_id;      // triggering event
    std::uint64_t timestamp_ms = 0; // logical clock at emission
};

struct FaultRecord {
    FaultCode code = FaultCode::Maperr;
    std::string event_id;
    int scene_index = 0;
};

// Label -> category table. Ships with defaults mirroring the audited label
// set; editable via a key=value config (see config/categories.conf and
// docs/bundle_format.md for the grammar). Labels starting with "VR_" fall
// back to VrSensory, everything else unknown falls back to Other.
class CategoryTable {
public:
    static CategoryTable defaults();
    static CategoryTable parse(std::istream& in); // throws ValidationError

    // (category, known?) for a label.
    std::pair<FlowCategory, bool> classify(const std::string& label) const;

    void set(const std::string& label, FlowCategory c) { table_[label] = c; }

private:
    std::map<std::string, FlowCategory> table_;
};

std::string fnv1a64_hex(const std::string& bytes);

class FlowSink {
public:
    explicit FlowSink(CategoryTable categories = CategoryTable::defaults());

    const DataFlowRecord& record_flow(const std::string& data_type, const std::string& host,
                                      const std::string& payload, const std::string& event_id,
                                      std::uint64_t timestamp_ms);

    void record_fault(FaultCode code, const std::string& event_id, int scene_index);

    const std::vector<DataFlowRecord>& log() const { return log_; }
    // Deduplicated by (data_type, host); insertion order preserved.
    const std::vector<DataFlowRecord>& unique() const { return unique_; }
    const std::vector<FaultRecord>& faults() const { return faults_; }

    std::set<std::pair<std::string, std::string>> unique_keys() const;
    std::map<FlowCategory, std::size_t> unique_by_category() const;
    std::map<FlowCategory, std::size_t> total_by_category() const;
    std::map<std::string, std::size_t> faults_by_code() const;

    // Newline-delimited JSON, one record per line, full log order.
    void export_ndjson(std::ostream& out) const;

private:
    CategoryTable categories_;
    std::vector<DataFlowRecord> log_;
    std::vector<DataFlowRecord> unique_;
    std::set<std::pair<std::string, std::string>> seen_;
    std::vector<FaultRecord> faults_;
};

} // namespace autovr

#endif
