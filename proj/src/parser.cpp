#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "adtree/dsl.hpp"
#include "lexer.hpp"

namespace adtree {

namespace {

using detail::Token;
using detail::TokenKind;

const std::set<std::string, std::less<>> kReserved = {"model", "control", "goal", "scenario", "or", "and",
                                                       "sand", "leaf", "pre", "exec", "apply"};

class Parser {
public:
    Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags) : tokens_(std::move(tokens)), diags_(diags) {}

    std::optional<Model> run() {
        try {
            return parse_model();
        } catch (const Abort&) {
            return std::nullopt;
        }
    }

private:
    struct Abort {};

    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    const Token& next() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }
    bool at_keyword(std::string_view kw) const { return peek().kind == TokenKind::Ident && peek().text == kw; }

    [[noreturn]] void fail(const Token& at, std::string code, std::string message) {
        diags_.push_back({DiagnosticSeverity::Error, at.span, std::move(code), std::move(message)});
        throw Abort{};
    }

    static std::string describe(const Token& t) {
        if (t.kind == TokenKind::End) return "end of input";
        if (t.kind == TokenKind::String) return "string \"" + t.text + "\"";
        return "'" + t.text + "'";
    }

    const Token& expect(TokenKind kind, std::string_view what = {}) {
        if (peek().kind != kind) {
            fail(peek(), "E-SYNTAX",
                 "expected " + std::string(what.empty() ? detail::token_kind_name(kind) : what) + ", found " +
                     describe(peek()));
        }
        return next();
    }

    void expect_keyword(std::string_view kw) {
        if (!at_keyword(kw)) fail(peek(), "E-SYNTAX", "expected '" + std::string(kw) + "', found " + describe(peek()));
        next();
    }

    const Token& expect_name(std::string_view what) {
        const Token& t = expect(TokenKind::Ident, what);
        if (kReserved.count(t.text) != 0) fail(t, "E-SYNTAX", "'" + t.text + "' is a reserved word");
        return t;
    }

    Model parse_model() {
        Model model;
        expect_keyword("model");
        model.name = expect(TokenKind::String, "model name string").text;
        expect(TokenKind::LBrace);
        while (peek().kind != TokenKind::RBrace) {
            if (at_keyword("control")) {
                parse_control(model);
            } else if (at_keyword("goal")) {
                model.goals.push_back(parse_goal());
            } else if (at_keyword("scenario")) {
                model.scenarios.push_back(parse_scenario());
            } else {
                fail(peek(), "E-SYNTAX", "expected 'control', 'goal' or 'scenario', found " + describe(peek()));
            }
        }
        expect(TokenKind::RBrace);
        expect(TokenKind::End);
        return model;
    }

    int parse_int() {
        const Token& t = expect(TokenKind::Number, "integer");
        int value = 0;
        const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) fail(t, "E-SYNTAX", "expected an integer");
        return value;
    }

    void parse_control(Model& model) {
        expect_keyword("control");
        const Token& name = expect_name("control name");
        Control control;
        control.name = name.text;
        control.span = name.span;
        expect(TokenKind::LBrace);
        expect_keyword("cost");
        control.cost = parse_int();
        expect(TokenKind::Semicolon);
        expect_keyword("class");
        const Token& cls = expect(TokenKind::Ident, "'preventive' or 'detective'");
        if (cls.text == "preventive") {
            control.cls = ControlClass::Preventive;
        } else if (cls.text == "detective") {
            control.cls = ControlClass::Detective;
        } else {
            fail(cls, "E-SYNTAX", "expected 'preventive' or 'detective', found " + describe(cls));
        }
        expect(TokenKind::Semicolon);
        while (at_keyword("transform")) {
            next();
            const Token& metric_tok = expect(TokenKind::Ident, "metric name");
            const auto metric = parse_metric(metric_tok.text);
            if (!metric) fail(metric_tok, "E-BAD-METRIC", "unknown metric " + describe(metric_tok));
            Transform t;
            t.metric = *metric;
            t.from = parse_metric_value(*metric);
            expect(TokenKind::Arrow);
            t.to = parse_metric_value(*metric);
            expect(TokenKind::Semicolon);
            control.transforms.push_back(t);
        }
        expect(TokenKind::RBrace);
        if (!model.controls.emplace(control.name, control).second) {
            fail(name, "E-DUPLICATE", "duplicate control '" + control.name + "'");
        }
    }

    int parse_metric_value(Metric metric) {
        const Token& t = peek();
        if (t.kind != TokenKind::Ident) fail(t, "E-BAD-METRIC", "expected a value for " + std::string(metric_name(metric)));
        const auto lvl = parse_level(metric, t.text);
        if (!lvl) {
            fail(t, "E-BAD-METRIC", describe(t) + " is not a valid " + std::string(metric_name(metric)) + " value");
        }
        next();
        return *lvl;
    }

    Goal parse_goal() {
        expect_keyword("goal");
        const Token& name = expect_name("goal name");
        Goal goal;
        goal.name = name.text;
        goal.span = name.span;
        expect(TokenKind::LBrace);
        expect_keyword("impact");
        goal.impact.c = parse_impact_component("C");
        goal.impact.i = parse_impact_component("I");
        goal.impact.a = parse_impact_component("A");
        expect(TokenKind::Semicolon);
        goal.root = parse_node();
        expect(TokenKind::RBrace);
        return goal;
    }

    double parse_impact_component(std::string_view letter) {
        expect_keyword(letter);
        expect(TokenKind::Colon);
        const Token& t = next();
        if (t.kind == TokenKind::Ident) {
            if (t.text == "N") return weights::kImpactNone;
            if (t.text == "L") return weights::kImpactLow;
            if (t.text == "H") return weights::kImpactHigh;
            fail(t, "E-BAD-METRIC", describe(t) + " is not an impact level (N, L, H or a number)");
        }
        if (t.kind != TokenKind::Number) fail(t, "E-SYNTAX", "expected impact value, found " + describe(t));
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) fail(t, "E-SYNTAX", "malformed number");
        return value;
    }

    Node parse_node() {
        const Token& head = peek();
        if (head.kind != TokenKind::Ident) fail(head, "E-SYNTAX", "expected a node, found " + describe(head));
        if (head.text == "or" || head.text == "and") {
            next();
            Node node;
            node.kind = head.text == "or" ? NodeKind::Or : NodeKind::And;
            node.span = head.span;
            if (peek().kind == TokenKind::Ident) {
                const Token& label = expect_name("label");
                node.name = label.text;
                node.span = label.span;
            }
            expect(TokenKind::LBrace);
            while (peek().kind != TokenKind::RBrace) node.children.push_back(parse_node());
            expect(TokenKind::RBrace);
            return node;
        }
        if (head.text == "sand") {
            next();
            Node node;
            node.kind = NodeKind::Sand;
            node.span = head.span;
            if (peek().kind == TokenKind::Ident) {
                const Token& label = expect_name("label");
                node.name = label.text;
                node.span = label.span;
            }
            expect(TokenKind::LBrace);
            expect_keyword("pre");
            node.children.push_back(parse_node());
            expect_keyword("exec");
            node.children.push_back(parse_node());
            expect(TokenKind::RBrace);
            return node;
        }
        if (head.text == "leaf") {
            next();
            return parse_leaf();
        }
        const Token& target = expect_name("node");
        Node ref = Node::ref(target.text);
        ref.span = target.span;
        return ref;
    }

    Node parse_leaf() {
        const Token& name = expect_name("leaf name");
        Node leaf = Node::leaf(name.text, {});
        leaf.span = name.span;
        expect(TokenKind::LBrace);
        while (at_keyword("cve")) {
            next();
            CveRef cve;
            const Token& id = expect(TokenKind::String, "CVE identifier string");
            cve.id = id.text;
            cve.span = id.span;
            expect_keyword("vector");
            cve.vector = parse_vector_metrics();
            if (at_keyword("note")) {
                next();
                cve.note = expect(TokenKind::String, "note string").text;
            }
            expect(TokenKind::Semicolon);
            leaf.candidates.push_back(std::move(cve));
        }
        if (at_keyword("defenses")) {
            next();
            expect(TokenKind::LBracket);
            leaf.defenses.push_back(expect_name("control name").text);
            while (peek().kind == TokenKind::Comma) {
                next();
                leaf.defenses.push_back(expect_name("control name").text);
            }
            expect(TokenKind::RBracket);
            expect(TokenKind::Semicolon);
        }
        if (peek().kind != TokenKind::RBrace) {
            fail(peek(), "E-SYNTAX", "expected 'cve', 'defenses' or '}', found " + describe(peek()));
        }
        next();
        return leaf;
    }

    MetricVector parse_vector_metrics() {
        MetricVector v;
        std::array<bool, 4> seen{};
        const Token& start = peek();
        while (peek().kind == TokenKind::Ident && peek(1).kind == TokenKind::Colon) {
            const Token& name = next();
            next();  // ':'
            if (name.text == "S") {
                const Token& value = peek();
                if (value.kind == TokenKind::Ident && value.text == "U") {
                    next();
                    continue;
                }
                if (value.kind == TokenKind::Ident && value.text == "C") {
                    fail(value, "E-SCOPE-CHANGED", "Scope:Changed is not supported; only S:U vectors are scored");
                }
                fail(value, "E-BAD-METRIC", describe(value) + " is not a valid S value");
            }
            const auto metric = parse_metric(name.text);
            if (!metric) fail(name, "E-BAD-METRIC", "unknown metric " + describe(name));
            auto& flag = seen[static_cast<std::size_t>(*metric)];
            if (flag) fail(name, "E-SYNTAX", "metric " + name.text + " given twice");
            flag = true;
            v = with_level(v, *metric, parse_metric_value(*metric));
        }
        for (Metric m : kAllMetrics) {
            if (!seen[static_cast<std::size_t>(m)]) {
                fail(seen == std::array<bool, 4>{} ? start : peek(), "E-SYNTAX",
                     "vector lacks " + std::string(metric_name(m)));
            }
        }
        return v;
    }

    Scenario parse_scenario() {
        expect_keyword("scenario");
        const Token& name = expect_name("scenario name");
        Scenario scenario;
        scenario.name = name.text;
        scenario.span = name.span;
        expect(TokenKind::LBrace);
        do {
            expect_keyword("apply");
            const Token& control = expect_name("control name");
            Application app;
            app.control = control.text;
            app.span = control.span;
            expect(TokenKind::Arrow);
            if (at_keyword("exec") && peek(1).kind == TokenKind::LParen) {
                next();
                next();
                app.target = {expect_name("execution node name").text, true};
                expect(TokenKind::RParen);
            } else {
                app.target = {expect_name("target node").text, false};
            }
            expect(TokenKind::Semicolon);
            scenario.applications.push_back(std::move(app));
        } while (peek().kind != TokenKind::RBrace);
        next();
        return scenario;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::vector<Diagnostic>& diags_;
};

}  // namespace

ParseResult parse(std::string_view text, std::string file) {
    ParseResult result;
    auto tokens = detail::lex(text, file, result.diagnostics);
    if (has_errors(result.diagnostics)) return result;
    auto model = Parser(std::move(tokens), result.diagnostics).run();
    if (!model) return result;
    auto semantic = validate(*model);
    result.diagnostics.insert(result.diagnostics.end(), semantic.begin(), semantic.end());
    for (auto& d : result.diagnostics) {
        if (d.span.file.empty()) d.span.file = file;
    }
    if (!has_errors(result.diagnostics)) result.model = std::move(model);
    return result;
}

ParseResult parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        ParseResult result;
        result.diagnostics.push_back(
            {DiagnosticSeverity::Error, {path, 1, 1, 0}, "E-IO", "cannot read '" + path + "'"});
        return result;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

}  // namespace adtree
