#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace becvortex {

/// Minimal deterministic JSON emitter.  Numbers are rendered with 17
/// significant digits so 64-bit reals round-trip exactly and repeated runs
/// produce byte-identical output.
class JsonWriter {
public:
    JsonWriter& begin_object() { return open('{'); }
    JsonWriter& end_object() { return close('}'); }
    JsonWriter& begin_array() { return open('['); }
    JsonWriter& end_array() { return close(']'); }

    JsonWriter& key(const std::string& k) {
        separate();
        out_ += '"';
        escape(k);
        out_ += "\":";
        pending_value_ = true;
        return *this;
    }

    JsonWriter& value(double v) {
        separate();
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out_ += buf;
        return *this;
    }
    JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
    JsonWriter& value(long long v) {
        separate();
        out_ += std::to_string(v);
        return *this;
    }
    JsonWriter& value(bool v) {
        separate();
        out_ += v ? "true" : "false";
        return *this;
    }
    JsonWriter& value(const std::string& v) {
        separate();
        out_ += '"';
        escape(v);
        out_ += '"';
        return *this;
    }
    JsonWriter& value(const char* v) { return value(std::string(v)); }

    const std::string& str() const { return out_; }

private:
    std::string out_;
    std::vector<bool> has_items_;
    bool pending_value_ = false;

    JsonWriter& open(char c) {
        separate();
        out_ += c;
        has_items_.push_back(false);
        return *this;
    }
    JsonWriter& close(char c) {
        if (has_items_.empty()) throw std::logic_error("json: unbalanced close");
        out_ += c;
        has_items_.pop_back();
        return *this;
    }
    void separate() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!has_items_.empty()) {
            if (has_items_.back()) out_ += ',';
            has_items_.back() = true;
        }
    }
    void escape(const std::string& s) {
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                default: out_ += c;
            }
        }
    }
};

/// Writes content to path atomically (temp file in the same directory, then
/// rename), so an interrupted run never leaves a partial file at the target.
void atomic_write(const std::string& path, const std::string& content);

} // namespace becvortex
