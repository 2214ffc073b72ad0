#pragma once

#include <map>
#include <optional>
#include <string>

#include "gs/label.hpp"

namespace gs {

/// Local human-name -> label mapping, persisted as a JSON object. Names are
/// a client-side convenience only; the network never sees them. Injective
/// per file.
class NameDirectory {
public:
    void add(const std::string& name, const Label& label);
    const Label* find(const std::string& name) const;
    std::optional<std::string> name_of(const Label& label) const;
    size_t size() const { return by_name_.size(); }
    const std::map<std::string, Label>& entries() const { return by_name_; }

    std::string to_json() const;
    static NameDirectory from_json(const std::string& text);

    static NameDirectory load(const std::string& path);
    void save(const std::string& path) const;

private:
    std::map<std::string, Label> by_name_;
    std::map<Label, std::string> by_label_;
};

}  // namespace gs
