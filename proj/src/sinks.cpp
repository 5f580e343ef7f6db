#include "autovr/sinks.hpp"

#include <nlohmann/json.hpp>

namespace autovr {

std::string to_string(FlowCategory c) {
    switch (c) {
        case FlowCategory::Pii: return "PII";
        case FlowCategory::Fingerprinting: return "Fingerprinting";
        case FlowCategory::VrSensory: return "VRSensory";
        case FlowCategory::Other: return "Other";
    }
    return "Other";
}

namespace {

FlowCategory category_from_string(const std::string& s) {
    if (s == "PII") return FlowCategory::Pii;
    if (s == "Fingerprinting") return FlowCategory::Fingerprinting;
    if (s == "VRSensory") return FlowCategory::VrSensory;
    if (s == "Other") return FlowCategory::Other;
    throw ValidationError("unknown category '" + s + "'", "categories");
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

CategoryTable CategoryTable::defaults() {
    // Keep in sync with config/categories.conf (the shipped, editable copy).
    CategoryTable t;
    const char* pii[] = {"EMAIL", "USER_ID", "DEVICE_ID", "GPS", "SERIAL_NUMBER",
                         "ANDROID_ID", "LOCATION"};
    for (const char* l : pii) t.set(l, FlowCategory::Pii);

    const char* fp[] = {"DEVICE_INFO", "GPU_INFO", "CPU_INFO", "SCREEN_INFO", "BUILD_INFO",
                        "APP_INFO", "OS_INFO", "PLATFORM_INFO", "OPENGL_VERSION",
                        "UNITY_VERSION", "SCRIPTING_BACKEND", "INSTALL_INFO", "EVENT_INFO",
                        "LANGUAGE", "JAIL", "PLAY_SESSION",
                        // Ambiguous labels; Fingerprinting by default, overridable.
                        "ANALYTIC", "COOKIE", "SESSION_DATA"};
    for (const char* l : fp) t.set(l, FlowCategory::Fingerprinting);

    const char* vr[] = {"VR_FIELD_OF_VIEW", "VR_PLAY_AREA", "VR_USER_DEVICE_IPD",
                        "POSITION", "TRACKING", "SENSOR_DATA"};
    for (const char* l : vr) t.set(l, FlowCategory::VrSensory);
    return t;
}

CategoryTable CategoryTable::parse(std::istream& in) {
    CategoryTable t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ValidationError("expected LABEL=Category", "categories line " + std::to_string(lineno));
        std::string label = trim(s.substr(0, eq));
        std::string cat = trim(s.substr(eq + 1));
        if (label.empty())
            throw ValidationError("empty label", "categories line " + std::to_string(lineno));
        t.set(label, category_from_string(cat));
    }
    return t;
}

std::pair<FlowCategory, bool> CategoryTable::classify(const std::string& label) const {
    auto it = table_.find(label);
    if (it != table_.end()) return {it->second, true};
    if (label.rfind("VR_", 0) == 0) return {FlowCategory::VrSensory, true};
    return {FlowCategory::Other, false};
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xF];
        h >>= 4;
    }
    buf[16] = '\0';
    return buf;
}

FlowSink::FlowSink(CategoryTable categories) : categories_(std::move(categories)) {}

const DataFlowRecord& FlowSink::record_flow(const std::string& data_type, const std::string& host,
                                            const std::string& payload, const std::string& event_id,
                                            std::uint64_t timestamp_ms) {
    DataFlowRecord rec;
    rec.data_type = data_type;
    rec.host = host;
    rec.payload_digest = fnv1a64_hex(payload);
    auto [cat, known] = categories_.classify(data_type);
    rec.category = cat;
    rec.unknown_type = !known;
    rec.event_id = event_id;
    rec.timestamp_ms = timestamp_ms;
    log_.push_back(rec);
    if (seen_.insert({data_type, host}).second) unique_.push_back(rec);
    return log_.back();
}

void FlowSink::record_fault(FaultCode code, const std::string& event_id, int scene_index) {
    faults_.push_back({code, event_id, scene_index});
}

std::set<std::pair<std::string, std::string>> FlowSink::unique_keys() const { return seen_; }

std::map<FlowCategory, std::size_t> FlowSink::unique_by_category() const {
    std::map<FlowCategory, std::size_t> out;
    for (const DataFlowRecord& r : unique_) ++out[r.category];
    return out;
}

std::map<FlowCategory, std::size_t> FlowSink::total_by_category() const {
    std::map<FlowCategory, std::size_t> out;
    for (const DataFlowRecord& r : log_) ++out[r.category];
    return out;
}

std::map<std::string, std::size_t> FlowSink::faults_by_code() const {
    std::map<std::string, std::size_t> out;
    for (const FaultRecord& f : faults_) ++out[to_string(f.code)];
    return out;
}

void FlowSink::export_ndjson(std::ostream& out) const {
    for (const DataFlowRecord& r : log_) {
        nlohmann::ordered_json j;
        j["data_type"] = r.data_type;
        j["host"] = r.host;
        j["payload_digest"] = r.payload_digest;
        j["category"] = to_string(r.category);
        if (r.unknown_type) j["unknown_type"] = true;
        j["event_id"] = r.event_id;
        j["timestamp_ms"] = r.timestamp_ms;
        out << j.dump() << "\n";
    }
}

} // namespace autovr
