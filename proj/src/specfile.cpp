#include "bds/specfile.hpp"

#include "bds/errors.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace bds {

namespace {

std::vector<std::string> tokenize(std::string_view s) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\r') {
            if (!current.empty()) {
                tokens.push_back(std::move(current));
                current.clear();
            }
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) {
        tokens.push_back(std::move(current));
    }
    return tokens;
}

SequenceSpec parse_family(const std::vector<std::string>& tokens, std::size_t& pos, int line) {
    auto fail = [line](const std::string& msg) -> SequenceSpec {
        throw SpecParseError("line " + std::to_string(line) + ": " + msg);
    };
    if (pos >= tokens.size()) {
        return fail("missing sequence family");
    }
    const std::string kind = tokens[pos++];
    if (kind == "const") {
        if (pos >= tokens.size()) {
            return fail("const needs one value");
        }
        return SequenceSpec::constant(parse_rational(tokens[pos++]));
    }
    if (kind == "geom") {
        if (pos + 1 >= tokens.size()) {
            return fail("geom needs a base and a ratio");
        }
        Scalar base = parse_rational(tokens[pos++]);
        Scalar ratio = parse_rational(tokens[pos++]);
        return SequenceSpec::geometric(std::move(base), std::move(ratio));
    }
    if (kind == "poly") {
        std::vector<Scalar> coeffs;
        while (pos < tokens.size() && tokens[pos] != "tail") {
            coeffs.push_back(parse_rational(tokens[pos++]));
        }
        if (coeffs.empty()) {
            return fail("poly needs at least one coefficient");
        }
        return SequenceSpec::polynomial(std::move(coeffs));
    }
    if (kind == "table") {
        std::vector<Scalar> prefix;
        while (pos < tokens.size() && tokens[pos] != "tail") {
            prefix.push_back(parse_rational(tokens[pos++]));
        }
        if (prefix.empty()) {
            return fail("table needs at least one tabulated value");
        }
        if (pos >= tokens.size() || tokens[pos] != "tail") {
            return fail("table needs a tail family");
        }
        ++pos; // consume 'tail'
        SequenceSpec tail = parse_family(tokens, pos, line);
        return SequenceSpec::table(std::move(prefix), std::move(tail));
    }
    return fail("unknown sequence family '" + kind + "'");
}

} // namespace

ChainSpecFile parse_chain_spec(std::string_view text) {
    std::optional<SequenceSpec> b, m, W;
    std::optional<Scalar> lambda, K;

    int lineNo = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        ++lineNo;
        const std::size_t end = text.find('\n', start);
        std::string_view line =
            text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;

        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::vector<std::string> tokens = tokenize(line);
        if (tokens.empty()) {
            continue;
        }

        auto fail = [lineNo](const std::string& msg) {
            throw SpecParseError("line " + std::to_string(lineNo) + ": " + msg);
        };

        // Keys: "lambda = R", "K = R", "b: <family>" (the separator may be
        // glued to the key).
        std::string key = tokens[0];
        std::size_t pos = 1;
        std::string sep;
        if (auto cut = key.find_first_of(":="); cut != std::string::npos) {
            sep = key.substr(cut, 1);
            if (cut + 1 < key.size()) {
                tokens.insert(tokens.begin() + 1, key.substr(cut + 1));
            }
            key = key.substr(0, cut);
        } else {
            if (pos >= tokens.size()) {
                fail("missing separator after '" + key + "'");
            }
            sep = tokens[pos].substr(0, 1);
            if (sep != ":" && sep != "=") {
                fail("expected ':' or '=' after '" + key + "'");
            }
            if (tokens[pos].size() > 1) {
                tokens[pos] = tokens[pos].substr(1);
            } else {
                ++pos;
            }
        }

        if (key == "lambda" || key == "K") {
            if (sep != "=") {
                fail("'" + key + "' uses '='");
            }
            if (pos >= tokens.size() || pos + 1 < tokens.size()) {
                fail("'" + key + "' needs exactly one rational value");
            }
            auto& slot = key == "lambda" ? lambda : K;
            if (slot) {
                fail("duplicate key '" + key + "'");
            }
            slot = parse_rational(tokens[pos]);
        } else if (key == "b" || key == "m" || key == "W") {
            if (sep != ":") {
                fail("'" + key + "' uses ':'");
            }
            auto& slot = key == "b" ? b : key == "m" ? m : W;
            if (slot) {
                fail("duplicate key '" + key + "'");
            }
            slot = parse_family(tokens, pos, lineNo);
            if (pos != tokens.size()) {
                fail("trailing tokens after '" + key + "' family");
            }
        } else {
            fail("unknown key '" + key + "'");
        }
    }

    if (!b || !m || !W) {
        throw SpecParseError("chain spec needs all of b, m and W");
    }
    ChainSpecFile file;
    file.chain = BirthDeathChain{std::move(*b), std::move(*m), std::move(*W)};
    file.lambda = std::move(lambda);
    file.K = std::move(K);
    return file;
}

ChainSpecFile load_chain_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw SpecParseError("cannot open chain spec file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_chain_spec(buffer.str());
}

std::string format_family(const SequenceSpec& spec) {
    switch (spec.family()) {
    case SequenceSpec::Family::Const:
        return "const " + to_string(spec.const_value());
    case SequenceSpec::Family::Geom:
        return "geom " + to_string(spec.geom_base()) + " " + to_string(spec.geom_ratio());
    case SequenceSpec::Family::Poly: {
        std::string out = "poly";
        for (const Scalar& c : spec.poly_coeffs()) {
            out += " " + to_string(c);
        }
        return out;
    }
    case SequenceSpec::Family::Table: {
        std::string out = "table";
        for (const Scalar& x : spec.table_prefix()) {
            out += " " + to_string(x);
        }
        return out + " tail " + format_family(spec.table_tail());
    }
    }
    throw InternalError("unreachable sequence family");
}

std::string format_chain_summary(const BirthDeathChain& chain, const std::optional<Scalar>& lambda,
                                 const std::optional<Scalar>& K) {
    std::string out;
    out += "b: " + format_family(chain.b) + "\n";
    out += "m: " + format_family(chain.m) + "\n";
    out += "W: " + format_family(chain.W) + "\n";
    if (lambda) {
        out += "lambda = " + to_string(*lambda) + "\n";
    }
    if (K) {
        out += "K = " + to_string(*K) + "\n";
    }
    return out;
}

} // namespace bds
