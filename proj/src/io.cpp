#include "forrlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace forrlab::io {

namespace {

std::string hex_word(gf2::word w) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(w));
    return buf;
}

gf2::word parse_hex(const std::string& s) { return std::stoull(s, nullptr, 16); }

} // namespace

json spread_to_json(const spreads::Spread& s) {
    json subs = json::array();
    for (const auto& e : s.subspaces) {
        json rows = json::array();
        for (gf2::word r : e.rows) rows.push_back(hex_word(r));
        subs.push_back(rows);
    }
    return json{{"schema", "spread/1"}, {"n", s.n}, {"m", s.m}, {"subspaces", subs}};
}

spreads::Spread spread_from_json(const json& j) {
    if (j.at("schema") != "spread/1") throw std::invalid_argument("spread_from_json: wrong schema");
    spreads::Spread s;
    s.n = j.at("n").get<unsigned>();
    s.m = j.at("m").get<unsigned>();
    for (const auto& rows : j.at("subspaces")) {
        std::vector<gf2::word> ws;
        for (const auto& r : rows) ws.push_back(parse_hex(r.get<std::string>()));
        s.subspaces.push_back(gf2::rref(s.n, ws));
    }
    return s;
}

json instance_to_json(const forrel::ForrelationInstance& inst, bool reveal_hidden) {
    const unsigned n = inst.n();
    json jf = json::array(), jg = json::array();
    for (gf2::word x = 0; x < (gf2::word{1} << n); ++x) {
        jf.push_back(inst.eval_f(x));
        jg.push_back(inst.eval_g(x));
    }
    json out{{"schema", "instance/1"}, {"n", n}, {"f", jf}, {"g", jg}};
    if (reveal_hidden) {
        const auto& ps = inst.psf().partial_spread();
        out["hidden"] = {{"label", inst.label() == forrel::Label::yes ? "yes" : "no"},
                         {"spread", spread_to_json(ps.spread)},
                         {"d_indices", ps.d_indices},
                         {"offset", hex_word(ps.offset)}};
    }
    return out;
}

forrel::ForrelationInstance instance_from_json(const json& j) {
    if (j.at("schema") != "instance/1") throw std::invalid_argument("instance_from_json: wrong schema");
    if (!j.contains("hidden"))
        throw std::invalid_argument("instance_from_json: hidden fields required to rebuild");
    const json& h = j.at("hidden");
    spreads::PartialSpread ps;
    ps.spread = spread_from_json(h.at("spread"));
    ps.d_indices = h.at("d_indices").get<std::vector<std::size_t>>();
    ps.offset = parse_hex(h.at("offset").get<std::string>());
    const forrel::Label label =
        h.at("label").get<std::string>() == "yes" ? forrel::Label::yes : forrel::Label::no;
    return forrel::ForrelationInstance(label, bent::PartialSpreadFunction(std::move(ps)));
}

namespace {

void write_table_files(const std::string& prefix, const std::string& kind,
                       const std::string& encoding, unsigned n, const void* data,
                       std::size_t bytes, std::size_t count) {
    json header{{"schema", "table/1"}, {"n", n},       {"kind", kind},
                {"encoding", encoding}, {"count", count}, {"data_file", prefix + ".bin"}};
    std::ofstream hf(prefix + ".json");
    hf << header.dump(2) << '\n';
    std::ofstream bf(prefix + ".bin", std::ios::binary);
    bf.write(static_cast<const char*>(data), static_cast<std::streamsize>(bytes));
    if (!bf) throw std::runtime_error("write_table_files: cannot write " + prefix + ".bin");
}

json read_header(const std::string& prefix, const std::string& want_kind) {
    std::ifstream hf(prefix + ".json");
    if (!hf) throw std::runtime_error("read_header: cannot open " + prefix + ".json");
    json h = json::parse(hf);
    if (h.at("schema") != "table/1" || h.at("kind") != want_kind)
        throw std::invalid_argument("read_header: wrong schema or kind");
    return h;
}

} // namespace

void write_sign_table(const bent::SignTable& t, const std::string& prefix) {
    write_table_files(prefix, "sign", "int8-le", t.n, t.values.data(), t.values.size(),
                      t.values.size());
}

bent::SignTable read_sign_table(const std::string& prefix) {
    const json h = read_header(prefix, "sign");
    bent::SignTable t;
    t.n = h.at("n").get<unsigned>();
    const std::size_t count = h.at("count").get<std::size_t>();
    t.values.resize(count);
    std::ifstream bf(h.at("data_file").get<std::string>(), std::ios::binary);
    bf.read(reinterpret_cast<char*>(t.values.data()), static_cast<std::streamsize>(count));
    if (!bf) throw std::runtime_error("read_sign_table: short read");
    return t;
}

void write_fourier_table(const bent::FourierTable& t, const std::string& prefix) {
    // int32 little-endian; this codebase targets little-endian hosts
    write_table_files(prefix, "fourier", "int32-le", t.n, t.num.data(), t.num.size() * 4,
                      t.num.size());
}

bent::FourierTable read_fourier_table(const std::string& prefix) {
    const json h = read_header(prefix, "fourier");
    bent::FourierTable t;
    t.n = h.at("n").get<unsigned>();
    const std::size_t count = h.at("count").get<std::size_t>();
    t.num.resize(count);
    std::ifstream bf(h.at("data_file").get<std::string>(), std::ios::binary);
    bf.read(reinterpret_cast<char*>(t.num.data()), static_cast<std::streamsize>(count * 4));
    if (!bf) throw std::runtime_error("read_fourier_table: short read");
    return t;
}

namespace {

std::string side_name(games::Side s) {
    switch (s) {
        case games::Side::f: return "f";
        case games::Side::g: return "g";
        case games::Side::both: return "both";
    }
    return "?";
}

games::Side side_from(const std::string& s) {
    if (s == "f") return games::Side::f;
    if (s == "g") return games::Side::g;
    if (s == "both") return games::Side::both;
    throw std::invalid_argument("unknown side: " + s);
}

} // namespace

json transcript_to_json(const games::Transcript& t) {
    json entries = json::array();
    for (const auto& e : t.entries) {
        json r;
        if (e.response.f_value) r["f_value"] = *e.response.f_value;
        if (e.response.g_value) r["g_value"] = *e.response.g_value;
        if (e.response.f_bucket) r["f_bucket"] = *e.response.f_bucket;
        if (e.response.g_bucket) {
            if (*e.response.g_bucket == games::kNoBucket)
                r["g_bucket"] = nullptr; // zero sentinel
            else
                r["g_bucket"] = *e.response.g_bucket;
        }
        if (e.response.offset_hit) r["offset_hit"] = true;
        entries.push_back(
            {{"point", hex_word(e.query.point)}, {"side", side_name(e.query.side)}, {"response", r}});
    }
    return json{{"schema", "transcript/1"}, {"entries", entries}};
}

games::Transcript transcript_from_json(const json& j) {
    if (j.at("schema") != "transcript/1")
        throw std::invalid_argument("transcript_from_json: wrong schema");
    games::Transcript t;
    for (const auto& je : j.at("entries")) {
        games::TranscriptEntry e;
        e.query.point = parse_hex(je.at("point").get<std::string>());
        e.query.side = side_from(je.at("side").get<std::string>());
        const json& r = je.at("response");
        if (r.contains("f_value")) e.response.f_value = r.at("f_value").get<int>();
        if (r.contains("g_value")) e.response.g_value = r.at("g_value").get<int>();
        if (r.contains("f_bucket")) e.response.f_bucket = r.at("f_bucket").get<std::size_t>();
        if (r.contains("g_bucket")) {
            if (r.at("g_bucket").is_null())
                e.response.g_bucket = games::kNoBucket;
            else
                e.response.g_bucket = r.at("g_bucket").get<std::size_t>();
        }
        if (r.contains("offset_hit")) e.response.offset_hit = r.at("offset_hit").get<bool>();
        t.entries.push_back(std::move(e));
    }
    return t;
}

json outcome_to_json(const games::GameOutcome& o) {
    json j{{"schema", "outcome/1"},
           {"won", o.won},
           {"cause", games::to_string(o.cause)},
           {"queries_used", o.queries_used}};
    if (o.witness) {
        json pts = json::array();
        for (gf2::word p : o.witness->points) pts.push_back(hex_word(p));
        j["witness"] = {{"side", side_name(o.witness->side)},
                        {"bucket", o.witness->bucket},
                        {"points", pts}};
    }
    return j;
}

} // namespace forrlab::io
