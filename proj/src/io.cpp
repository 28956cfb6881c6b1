#include "kcode/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace kcode {

namespace {

std::vector<std::string> content_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t i = line.find_first_not_of(" \t");
        if (i == std::string::npos || line[i] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

int parse_int(const std::string& tok, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad " + what + ": " + tok);
    }
}

}  // namespace

std::vector<LayeredRequest> read_requests(std::istream& in) {
    std::vector<LayeredRequest> out;
    for (const auto& line : content_lines(in)) {
        auto toks = split_ws(line);
        if (out.empty()) {
            if (toks.size() != 2 || toks[0] != "*" || toks[1] != "0")
                throw ParseError("line 0 must be `* 0`, got: " + line);
            out.push_back({});
            continue;
        }
        if (toks.size() < 2 || toks.size() > 3)
            throw ParseError("expected `<pointer> <length> [<payload>]`: " + line);
        LayeredRequest r;
        r.pointer = parse_int(toks[0], "pointer");
        r.length = parse_int(toks[1], "length");
        if (toks.size() == 3) r.payload = BitString::from_token(toks[2]);
        out.push_back(r);
    }
    if (out.empty()) throw ParseError("empty request file");
    return out;
}

void write_requests(std::ostream& out, const std::vector<LayeredRequest>& requests) {
    for (std::size_t i = 0; i < requests.size(); ++i) {
        if (i == 0) {
            out << "* 0\n";
            continue;
        }
        const auto& r = requests[i];
        out << r.pointer << ' ' << r.length;
        if (!r.payload.empty()) out << ' ' << r.payload.token();
        out << '\n';
    }
}

std::vector<int> read_lengths(std::istream& in) {
    std::vector<int> out;
    for (const auto& line : content_lines(in)) {
        auto toks = split_ws(line);
        for (const auto& t : toks) out.push_back(parse_int(t, "length"));
    }
    return out;
}

AvoidSet read_avoid_set(std::istream& in) {
    std::vector<BitString> members;
    for (const auto& line : content_lines(in)) {
        auto toks = split_ws(line);
        if (toks.size() != 1) throw ParseError("expected one bitstring per line: " + line);
        members.push_back(BitString::from_token(toks[0]));
    }
    return AvoidSet(std::move(members));
}

void write_avoid_set(std::ostream& out, const AvoidSet& q) {
    for (const auto& s : q.members()) out << s.token() << '\n';
}

Measure read_measure_table(std::istream& in) {
    std::vector<std::pair<BitString, int>> rows;
    for (const auto& line : content_lines(in)) {
        auto toks = split_ws(line);
        if (toks.size() != 2) throw ParseError("expected `<bits> <int>`: " + line);
        rows.emplace_back(BitString::from_token(toks[0]), parse_int(toks[1], "value"));
    }
    return measure_from_table(rows);
}

ApproxRun read_run(std::istream& in) {
    int c = -1, maxlen = -1;
    std::map<BitString, int> initial;
    std::vector<ApproxUpdate> updates;
    for (const auto& line : content_lines(in)) {
        auto toks = split_ws(line);
        if (toks.size() == 1 && toks[0].rfind("c=", 0) == 0) {
            c = parse_int(toks[0].substr(2), "c");
        } else if (toks.size() == 1 && toks[0].rfind("universe-maxlen=", 0) == 0) {
            maxlen = parse_int(toks[0].substr(16), "universe-maxlen");
        } else if (toks.size() == 3 && toks[0][0] == '@') {
            ApproxUpdate u;
            u.stage = parse_int(toks[0].substr(1), "stage");
            u.sigma = BitString::from_token(toks[1]);
            u.value = parse_int(toks[2], "value");
            updates.push_back(u);
        } else if (toks.size() == 2) {
            initial[BitString::from_token(toks[0])] = parse_int(toks[1], "value");
        } else {
            throw ParseError("unrecognized run line: " + line);
        }
    }
    if (c < 0 || maxlen < 0) throw ParseError("run file needs c= and universe-maxlen= headers");
    return ApproxRun(c, maxlen, std::move(initial), std::move(updates));
}

void write_run(std::ostream& out, const ApproxRun& run) {
    out << "c=" << run.c() << '\n';
    out << "universe-maxlen=" << run.universe_maxlen() << '\n';
    for (const auto& [s, v] : run.initial()) out << s.token() << ' ' << v << '\n';
    for (const auto& u : run.updates())
        out << '@' << u.stage << ' ' << u.sigma.token() << ' ' << u.value << '\n';
}

CodeFile read_code_file(std::istream& in) {
    CodeFile f;
    bool have_bits = false;
    for (const auto& line : content_lines(in)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value: " + line);
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        if (key == "measure") f.measure_id = val;
        else if (key == "params") f.measure_params = val;
        else if (key == "shift") f.shift = parse_int(val, "shift");
        else if (key == "bound") f.bound = parse_int(val, "bound");
        else if (key == "avoid-hash") f.avoid_hash = std::stoull(val, nullptr, 16);
        else if (key == "bits") { f.bits = BitString::from_token(val); have_bits = true; }
        else throw ParseError("unknown code-file key: " + key);
    }
    if (!have_bits) throw ParseError("code file has no bits= line");
    return f;
}

void write_code_file(std::ostream& out, const CodeFile& f) {
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(f.avoid_hash));
    out << "measure=" << f.measure_id << '\n';
    out << "params=" << f.measure_params << '\n';
    out << "shift=" << f.shift << '\n';
    out << "bound=" << f.bound << '\n';
    out << "avoid-hash=" << hex << '\n';
    out << "bits=" << f.bits.token() << '\n';
}

std::uint64_t avoid_hash(const AvoidSet& q) {
    std::uint64_t h = 14695981039346656037ull;
    for (const auto& s : q.members()) {
        for (char ch : s.token()) { h ^= static_cast<unsigned char>(ch); h *= 1099511628211ull; }
        h ^= '\n'; h *= 1099511628211ull;
    }
    return h;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace kcode
