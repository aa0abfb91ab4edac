#include "authsim/transcript.hpp"

#include <json.hpp>

#include <algorithm>
#include <utility>

#ifndef AUTHSIM_VERSION
#define AUTHSIM_VERSION "0.0.0"
#endif

namespace authsim {

using json = nlohmann::ordered_json;

namespace {

json to_json_value(const FieldValue& v) {
    return std::visit([](const auto& x) { return json(x); }, v);
}

json fields_to_json(const Fields& fields) {
    json out = json::object();
    for (const auto& f : fields) out[f.name] = to_json_value(f.value);
    return out;
}

json request_json(const LoginRequest& req) {
    return json{{"id", req.id.str()}, {"c2", req.c2.hex()}, {"t_u", req.t_u.seconds}};
}

json optional_json(const auto& opt, auto&& convert) {
    if (!opt) return nullptr;
    return convert(*opt);
}

json outcome_json(const adversary::AttackOutcome& o) {
    json out;
    out["attack"] = std::string(adversary::to_string(o.attack));
    out["server_accepted"] = o.server_accepted;
    out["honest_accepted"] = optional_json(o.honest_accepted, [](bool b) { return json(b); });
    out["delay"] = optional_json(o.delay, [](std::uint64_t d) { return json(d); });
    out["intercepted"] = optional_json(o.intercepted, [](const adversary::InterceptedSession& s) {
        return json{{"request", request_json(s.request)},
                    {"response", {{"c3", s.response.c3.hex()}, {"t_s", s.response.t_s.seconds}}},
                    {"request_message", s.request_message},
                    {"response_message", s.response_message}};
    });
    out["fabricated"] = optional_json(o.fabricated, request_json);
    out["dropped_response"] = optional_json(o.dropped_response, [](const AuthResponse& r) {
        return json{{"c4", r.c3.hex()}, {"t_s_star", r.t_s.seconds}};
    });
    out["change_result"] = optional_json(
        o.change_result, [](PasswordChangeResult r) { return json(std::string(authsim::to_string(r))); });
    out["notes"] = o.notes;
    return out;
}

json sweep_json(const std::vector<DelayProbe>& probes) {
    json out = json::array();
    for (const auto& p : probes) out.push_back({{"delay", p.delay}, {"accepted", p.accepted}});
    return out;
}

// --- parsing -----------------------------------------------------------

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw TranscriptParseError(path + ": " + what, path);
}

const json& member(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) fail(path, "expected object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing field");
    return *it;
}

std::uint64_t as_u64(const json& v, const std::string& path) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        fail(path, "expected unsigned integer");
    }
    return v.get<std::uint64_t>();
}

bool as_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) fail(path, "expected boolean");
    return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected string");
    return v.get<std::string>();
}

Block as_block(const json& v, const std::string& path) {
    try {
        return Block::from_hex(as_string(v, path));
    } catch (const EncodingError& e) {
        fail(path, e.what());
    }
}

Identity as_identity(const json& v, const std::string& path) {
    try {
        return Identity(as_string(v, path));
    } catch (const EncodingError& e) {
        fail(path, e.what());
    }
}

std::vector<bool> as_bool_list(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected array");
    std::vector<bool> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_bool(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<DelayProbe> as_sweep(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected array");
    std::vector<DelayProbe> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        out.push_back({as_u64(member(v[i], p, "delay"), p + ".delay"),
                       as_bool(member(v[i], p, "accepted"), p + ".accepted")});
    }
    return out;
}

Fields as_fields(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected object");
    Fields out;
    for (const auto& [key, value] : v.items()) {
        const std::string p = path + "." + key;
        if (value.is_boolean()) {
            out.push_back({key, value.get<bool>()});
        } else if (value.is_string()) {
            out.push_back({key, value.get<std::string>()});
        } else {
            out.push_back({key, as_u64(value, p)});
        }
    }
    return out;
}

LoginRequest as_request(const json& v, const std::string& path) {
    return LoginRequest{as_identity(member(v, path, "id"), path + ".id"), as_block(member(v, path, "c2"), path + ".c2"),
                        Timestamp{as_u64(member(v, path, "t_u"), path + ".t_u")}};
}

adversary::AttackOutcome as_outcome(const json& v, const std::string& path) {
    adversary::AttackOutcome o;
    const std::string name = as_string(member(v, path, "attack"), path + ".attack");
    bool known = false;
    for (const auto a : {adversary::AttackName::HsuParallelKuChen, adversary::AttackName::PwChangeAbuseKuChen,
                         adversary::AttackName::ParallelYoon}) {
        if (adversary::to_string(a) == name) {
            o.attack = a;
            known = true;
        }
    }
    if (!known) fail(path + ".attack", "unknown attack '" + name + "'");
    o.server_accepted = as_bool(member(v, path, "server_accepted"), path + ".server_accepted");

    auto opt = [&](const char* key) -> const json* {
        const auto it = v.find(key);
        return it == v.end() || it->is_null() ? nullptr : &*it;
    };
    if (const json* j = opt("honest_accepted")) o.honest_accepted = as_bool(*j, path + ".honest_accepted");
    if (const json* j = opt("delay")) o.delay = as_u64(*j, path + ".delay");
    if (const json* j = opt("intercepted")) {
        const std::string p = path + ".intercepted";
        const json& resp = member(*j, p, "response");
        o.intercepted = adversary::InterceptedSession{
            as_request(member(*j, p, "request"), p + ".request"),
            AuthResponse{as_block(member(resp, p + ".response", "c3"), p + ".response.c3"),
                         Timestamp{as_u64(member(resp, p + ".response", "t_s"), p + ".response.t_s")}},
            as_u64(member(*j, p, "request_message"), p + ".request_message"),
            as_u64(member(*j, p, "response_message"), p + ".response_message")};
    }
    if (const json* j = opt("fabricated")) o.fabricated = as_request(*j, path + ".fabricated");
    if (const json* j = opt("dropped_response")) {
        const std::string p = path + ".dropped_response";
        o.dropped_response = AuthResponse{as_block(member(*j, p, "c4"), p + ".c4"),
                                          Timestamp{as_u64(member(*j, p, "t_s_star"), p + ".t_s_star")}};
    }
    if (const json* j = opt("change_result")) {
        const std::string r = as_string(*j, path + ".change_result");
        if (r == "changed") {
            o.change_result = PasswordChangeResult::Changed;
        } else if (r == "rejected_wrong_password") {
            o.change_result = PasswordChangeResult::RejectedWrongPassword;
        } else {
            fail(path + ".change_result", "unknown result '" + r + "'");
        }
    }
    if (const json* j = opt("notes")) {
        if (!j->is_array()) fail(path + ".notes", "expected array");
        for (std::size_t i = 0; i < j->size(); ++i) {
            o.notes.push_back(as_string((*j)[i], path + ".notes[" + std::to_string(i) + "]"));
        }
    }
    return o;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace

std::string_view tool_version() { return AUTHSIM_VERSION; }

TranscriptParseError::TranscriptParseError(const std::string& msg, std::string path, std::size_t line,
                                           std::size_t column)
    : std::runtime_error(msg), path_(std::move(path)), line_(line), column_(column) {}

std::string to_json(const Transcript& t, bool reveal_secrets) {
    json doc;
    doc["format"] = t.format;
    doc["tool"] = {{"name", "authsim"}, {"version", t.tool_version}};
    doc["scenario"] = {{"scheme", std::string(to_string(t.scenario.scheme))},
                       {"script", std::string(to_string(t.scenario.script))},
                       {"seed", t.scenario.seed},
                       {"delta_t", t.scenario.delta_t},
                       {"tick", t.scenario.tick},
                       {"block_len", t.scenario.block_len}};
    doc["reveal_secrets"] = reveal_secrets;

    json events = json::array();
    json secret_steps = json::array();
    for (const auto& s : t.events) {
        json e;
        e["step"] = s.step;
        e["time"] = s.event.time.seconds;
        e["actor"] = std::string(to_string(s.event.actor));
        e["party"] = s.event.party;
        e["kind"] = std::string(to_string(s.event.kind));
        e["label"] = s.event.label;
        if (s.event.message) e["message"] = *s.event.message;
        e["fields"] = fields_to_json(s.event.fields);
        events.push_back(std::move(e));
        if (reveal_secrets && !s.event.secrets.empty()) {
            secret_steps.push_back({{"step", s.step}, {"values", fields_to_json(s.event.secrets)}});
        }
    }
    doc["events"] = std::move(events);

    json verdicts;
    verdicts["server_accepts"] = t.verdicts.server_accepts;
    verdicts["card_accepts"] = t.verdicts.card_accepts;
    verdicts["attack_outcome"] = optional_json(t.verdicts.attack_outcome, outcome_json);
    verdicts["delay_sweep"] = sweep_json(t.verdicts.delay_sweep);
    verdicts["expected"] = {
        {"server_accepts", t.expected.server_accepts},
        {"card_accepts", t.expected.card_accepts},
        {"attack_accepted", optional_json(t.expected.attack_accepted, [](bool b) { return json(b); })},
        {"delay_sweep", sweep_json(t.expected.delay_sweep)}};
    verdicts["matches_expected"] = t.matches_expected;
    doc["verdicts"] = std::move(verdicts);

    if (reveal_secrets) doc["secrets"] = {{"scenario_seed", t.scenario.seed}, {"steps", std::move(secret_steps)}};
    return doc.dump(2) + "\n";
}

Transcript parse_transcript(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw TranscriptParseError("malformed JSON at line " + std::to_string(line) + ", column " +
                                       std::to_string(column) + ": " + e.what(),
                                   "$", line, column);
    }

    Transcript t;
    const std::string root = "$";
    const std::uint64_t format = as_u64(member(doc, root, "format"), "$.format");
    if (format != static_cast<std::uint64_t>(kTranscriptFormat)) {
        fail("$.format", "unsupported transcript format " + std::to_string(format));
    }
    t.format = kTranscriptFormat;
    t.tool_version = as_string(member(member(doc, root, "tool"), "$.tool", "version"), "$.tool.version");

    const json& sc = member(doc, root, "scenario");
    const std::string scheme = as_string(member(sc, "$.scenario", "scheme"), "$.scenario.scheme");
    const auto parsed_scheme = parse_scheme(scheme);
    if (!parsed_scheme) fail("$.scenario.scheme", "unknown scheme '" + scheme + "'");
    const std::string script = as_string(member(sc, "$.scenario", "script"), "$.scenario.script");
    const auto parsed_script = parse_script(script);
    if (!parsed_script) fail("$.scenario.script", "unknown script '" + script + "'");
    t.scenario.scheme = *parsed_scheme;
    t.scenario.script = *parsed_script;
    t.scenario.seed = as_u64(member(sc, "$.scenario", "seed"), "$.scenario.seed");
    t.scenario.delta_t = as_u64(member(sc, "$.scenario", "delta_t"), "$.scenario.delta_t");
    t.scenario.tick = as_u64(member(sc, "$.scenario", "tick"), "$.scenario.tick");
    t.scenario.block_len = as_u64(member(sc, "$.scenario", "block_len"), "$.scenario.block_len");

    const json& events = member(doc, root, "events");
    if (!events.is_array()) fail("$.events", "expected array");
    for (std::size_t i = 0; i < events.size(); ++i) {
        const std::string p = "$.events[" + std::to_string(i) + "]";
        const json& e = events[i];
        TranscriptStep s;
        s.step = as_u64(member(e, p, "step"), p + ".step");
        s.event.time = Timestamp{as_u64(member(e, p, "time"), p + ".time")};
        const std::string actor = as_string(member(e, p, "actor"), p + ".actor");
        const auto parsed_actor = parse_actor(actor);
        if (!parsed_actor) fail(p + ".actor", "unknown actor '" + actor + "'");
        s.event.actor = *parsed_actor;
        s.event.party = as_string(member(e, p, "party"), p + ".party");
        const std::string kind = as_string(member(e, p, "kind"), p + ".kind");
        const auto parsed_kind = parse_event_kind(kind);
        if (!parsed_kind) fail(p + ".kind", "unknown event kind '" + kind + "'");
        s.event.kind = *parsed_kind;
        s.event.label = as_string(member(e, p, "label"), p + ".label");
        if (const auto it = e.find("message"); it != e.end() && !it->is_null()) {
            s.event.message = as_u64(*it, p + ".message");
        }
        s.event.fields = as_fields(member(e, p, "fields"), p + ".fields");
        t.events.push_back(std::move(s));
    }

    const json& v = member(doc, root, "verdicts");
    t.verdicts.server_accepts = as_bool_list(member(v, "$.verdicts", "server_accepts"), "$.verdicts.server_accepts");
    t.verdicts.card_accepts = as_bool_list(member(v, "$.verdicts", "card_accepts"), "$.verdicts.card_accepts");
    if (const json& o = member(v, "$.verdicts", "attack_outcome"); !o.is_null()) {
        t.verdicts.attack_outcome = as_outcome(o, "$.verdicts.attack_outcome");
    }
    t.verdicts.delay_sweep = as_sweep(member(v, "$.verdicts", "delay_sweep"), "$.verdicts.delay_sweep");
    const json& ex = member(v, "$.verdicts", "expected");
    t.expected.server_accepts =
        as_bool_list(member(ex, "$.verdicts.expected", "server_accepts"), "$.verdicts.expected.server_accepts");
    t.expected.card_accepts =
        as_bool_list(member(ex, "$.verdicts.expected", "card_accepts"), "$.verdicts.expected.card_accepts");
    if (const json& a = member(ex, "$.verdicts.expected", "attack_accepted"); !a.is_null()) {
        t.expected.attack_accepted = as_bool(a, "$.verdicts.expected.attack_accepted");
    }
    t.expected.delay_sweep = as_sweep(member(ex, "$.verdicts.expected", "delay_sweep"), "$.verdicts.expected.delay_sweep");
    t.matches_expected = as_bool(member(v, "$.verdicts", "matches_expected"), "$.verdicts.matches_expected");

    const auto secrets = doc.find("secrets");
    t.has_secrets = secrets != doc.end() && !secrets->is_null();
    if (t.has_secrets) {
        const json& steps = member(*secrets, "$.secrets", "steps");
        if (!steps.is_array()) fail("$.secrets.steps", "expected array");
        for (std::size_t i = 0; i < steps.size(); ++i) {
            const std::string p = "$.secrets.steps[" + std::to_string(i) + "]";
            const std::uint64_t step = as_u64(member(steps[i], p, "step"), p + ".step");
            const auto it = std::find_if(t.events.begin(), t.events.end(),
                                         [step](const TranscriptStep& s) { return s.step == step; });
            if (it == t.events.end()) fail(p + ".step", "refers to unknown step " + std::to_string(step));
            it->event.secrets = as_fields(member(steps[i], p, "values"), p + ".values");
        }
    }
    return t;
}

}  // namespace authsim
