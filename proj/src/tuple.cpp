#include "gs/tuple.hpp"

#include "gs/errors.hpp"

namespace gs {

Tuple make_tuple(Label subject, Label predicate, NodeRef object, Label context,
                 uint64_t timestamp_us) {
    if (const Value* v = as_value(object); v && !v->well_formed())
        throw MalformedTuple("object value payload violates its declared type");
    Tuple t;
    t.subject = subject;
    t.predicate = predicate;
    t.object = std::move(object);
    t.context = context;
    t.timestamp_us = timestamp_us;
    return t;
}

Tuple make_tuple_checked(NodeRef subject, NodeRef predicate, NodeRef object, NodeRef context,
                         uint64_t timestamp_us) {
    if (is_value(subject)) throw MalformedTuple("value node in subject position");
    if (is_value(predicate)) throw MalformedTuple("value node in predicate position");
    if (is_value(context)) throw MalformedTuple("value node in context position");
    return make_tuple(*as_label(subject), *as_label(predicate), std::move(object),
                      *as_label(context), timestamp_us);
}

}  // namespace gs
