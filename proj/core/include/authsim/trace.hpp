#ifndef AUTHSIM_TRACE_HPP
#define AUTHSIM_TRACE_HPP

#include "authsim/primitives.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace authsim {

enum class Actor { User, Card, Server, Intruder };
enum class EventKind { Send, Receive, Intercept, Drop, Verdict, StateChange };

std::string_view to_string(Actor actor);
std::string_view to_string(EventKind kind);
std::optional<Actor> parse_actor(std::string_view name);
std::optional<EventKind> parse_event_kind(std::string_view name);

using FieldValue = std::variant<bool, std::uint64_t, std::string>;

struct Field {
    std::string name;
    FieldValue value;

    friend bool operator==(const Field&, const Field&) = default;
};

using Fields = std::vector<Field>;

const FieldValue* find_field(const Fields& fields, std::string_view name);

// One protocol event. `fields` are observable on the wire or in a verdict;
// `secrets` are party-internal values that only appear in a revealed transcript.
struct TraceEvent {
    Timestamp time;
    Actor actor = Actor::User;
    std::string party;
    EventKind kind = EventKind::StateChange;
    std::string label;
    std::optional<std::uint64_t> message;
    Fields fields;
    Fields secrets;
};

class TraceSink {
public:
    virtual ~TraceSink() = default;
    virtual void record(TraceEvent event) = 0;
};

}  // namespace authsim

#endif  // AUTHSIM_TRACE_HPP
