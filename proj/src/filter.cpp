#include "gs/filter.hpp"

#include "gs/errors.hpp"

namespace gs {

namespace {

bool slot_matches_label_position(const Slot& s, const Label& l) {
    if (is_wildcard(s)) return true;
    if (const Label* sl = std::get_if<Label>(&s)) return *sl == l;
    return false;  // value slot never matches a label position
}

bool slot_matches_object(const Slot& s, const NodeRef& o) {
    if (is_wildcard(s)) return true;
    if (const Label* sl = std::get_if<Label>(&s)) {
        const Label* ol = as_label(o);
        return ol && *ol == *sl;
    }
    const Value& sv = std::get<Value>(s);
    const Value* ov = as_value(o);
    return ov && *ov == sv;
}

}  // namespace

FilterTemplate FilterTemplate::make(Slot subject, Slot predicate, Slot object, Slot context) {
    if (std::holds_alternative<Value>(subject) || std::holds_alternative<Value>(predicate) ||
        std::holds_alternative<Value>(context))
        throw MalformedTuple("exact value only legal in the object slot");
    return FilterTemplate{std::move(subject), std::move(predicate), std::move(object),
                          std::move(context)};
}

bool matches(const FilterTemplate& f, const Tuple& t) {
    return slot_matches_label_position(f.subject, t.subject) &&
           slot_matches_label_position(f.predicate, t.predicate) &&
           slot_matches_object(f.object, t.object) &&
           slot_matches_label_position(f.context, t.context);
}

int selectivity_rank(const FilterTemplate& f) {
    int rank = 0;
    for (const Slot* s : {&f.subject, &f.predicate, &f.object, &f.context})
        if (!is_wildcard(*s)) ++rank;
    return rank;
}

FilterTemplate template_from_tuple(const Tuple& t) {
    FilterTemplate f;
    f.subject = t.subject;
    f.predicate = t.predicate;
    if (const Value* v = as_value(t.object))
        f.object = *v;
    else
        f.object = *as_label(t.object);
    f.context = t.context;
    return f;
}

namespace {

std::string slot_to_string(const Slot& s, const NameDirectory* names) {
    if (is_wildcard(s)) return "*";
    if (const Label* l = std::get_if<Label>(&s)) {
        if (names)
            if (auto n = names->name_of(*l)) return *n;
        return l->to_string();
    }
    const Value& v = std::get<Value>(s);
    if (v.type == value_types::utf8_string) return "'" + v.as_string() + "'";
    return "<value:" + (value_types::name_of(v.type).value_or(v.type.to_string())) + ">";
}

struct SlotParser {
    std::string_view text;
    size_t pos;
    const NameDirectory& names;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    Slot parse_slot() {
        skip_ws();
        if (pos >= text.size()) throw ParseError("expected template slot", pos);
        if (text[pos] == '*') {
            ++pos;
            return Wildcard{};
        }
        if (text[pos] == '\'') {
            size_t start = ++pos;
            while (pos < text.size() && text[pos] != '\'') ++pos;
            if (pos >= text.size()) throw ParseError("unterminated string", start - 1);
            std::string s(text.substr(start, pos - start));
            ++pos;
            return Value::from_string(s);
        }
        size_t start = pos;
        while (pos < text.size() && text[pos] != ',' && text[pos] != ']' && text[pos] != ' ' &&
               text[pos] != '\t')
            ++pos;
        std::string word(text.substr(start, pos - start));
        if (word.empty()) throw ParseError("empty template slot", start);
        if (auto l = Label::try_parse(word)) return *l;
        if (const Label* l = names.find(word)) return *l;
        throw ParseError("unresolvable name '" + word + "'", start);
    }
};

}  // namespace

std::string FilterTemplate::to_string(const NameDirectory* names) const {
    return "[" + slot_to_string(subject, names) + ", " + slot_to_string(predicate, names) + ", " +
           slot_to_string(object, names) + ", " + slot_to_string(context, names) + "]";
}

FilterTemplate parse_template(std::string_view text, const NameDirectory& names) {
    SlotParser p{text, 0, names};
    p.skip_ws();
    if (p.pos >= text.size() || text[p.pos] != '[') throw ParseError("expected '['", p.pos);
    ++p.pos;
    Slot slots[4];
    for (int i = 0; i < 4; ++i) {
        slots[i] = p.parse_slot();
        p.skip_ws();
        if (i < 3) {
            if (p.pos >= text.size() || text[p.pos] != ',') throw ParseError("expected ','", p.pos);
            ++p.pos;
        }
    }
    if (p.pos >= text.size() || text[p.pos] != ']') throw ParseError("expected ']'", p.pos);
    ++p.pos;
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing characters after template", p.pos);
    return FilterTemplate::make(slots[0], slots[1], slots[2], slots[3]);
}

}  // namespace gs
