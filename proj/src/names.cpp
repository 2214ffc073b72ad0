#include "gs/names.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gs/errors.hpp"

namespace gs {

void NameDirectory::add(const std::string& name, const Label& label) {
    if (by_name_.count(name)) throw Error("duplicate name '" + name + "'");
    if (by_label_.count(label)) throw Error("label already named '" + by_label_[label] + "'");
    by_name_[name] = label;
    by_label_[label] = name;
}

const Label* NameDirectory::find(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : &it->second;
}

std::optional<std::string> NameDirectory::name_of(const Label& label) const {
    auto it = by_label_.find(label);
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

std::string NameDirectory::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, label] : by_name_) j[name] = label.to_string();
    return j.dump(2);
}

NameDirectory NameDirectory::from_json(const std::string& text) {
    NameDirectory dir;
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object()) throw Error("name directory must be a JSON object");
    for (auto& [name, uuid] : j.items())
        dir.add(name, Label::from_string(uuid.get<std::string>()));
    return dir;
}

NameDirectory NameDirectory::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open name directory '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

void NameDirectory::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write name directory '" + path + "'");
    out << to_json() << "\n";
}

}  // namespace gs
