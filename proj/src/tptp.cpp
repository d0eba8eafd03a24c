#include "tptp.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace crp {

std::string formatDiagnostic(const Diagnostic& d) {
    std::ostringstream out;
    out << d.file << ':' << d.line << ':' << d.column << ": "
        << (d.severity == Diagnostic::Severity::Error ? "error" : "warning")
        << ": " << d.message;
    return out.str();
}

namespace {

enum class Tok {
    LowerWord,
    UpperWord,
    Number,
    DollarWord,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Pipe,
    Tilde,
    Equal,
    NotEqual,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;    // unquoted content for quoted words
    bool quoted = false; // came from a single-quoted token
    int line = 1;
    int column = 1;
};

// Thrown on the first error diagnostic; parsing does not try to recover.
struct ParseError {};

class Lexer {
public:
    Lexer(const std::string& text, std::string file, std::vector<Diagnostic>& diags)
        : text_(text), file_(std::move(file)), diags_(diags) {}

    const Token& peek() {
        if (!lookahead_)
            lookahead_ = scan();
        return *lookahead_;
    }

    Token next() {
        Token t = peek();
        lookahead_.reset();
        return t;
    }

    [[noreturn]] void fail(const Token& at, const std::string& message) {
        diags_.push_back({Diagnostic::Severity::Error, file_, at.line, at.column, message});
        throw ParseError{};
    }

    void warn(const Token& at, const std::string& message) {
        diags_.push_back({Diagnostic::Severity::Warning, file_, at.line, at.column, message});
    }

    const std::string& file() const { return file_; }

private:
    [[noreturn]] void failHere(const std::string& message) {
        diags_.push_back({Diagnostic::Severity::Error, file_, line_, col_, message});
        throw ParseError{};
    }

    int get() {
        if (pos_ >= text_.size())
            return -1;
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return static_cast<unsigned char>(c);
    }

    int look(size_t ahead = 0) const {
        return pos_ + ahead < text_.size()
                   ? static_cast<unsigned char>(text_[pos_ + ahead])
                   : -1;
    }

    void skipTrivia() {
        for (;;) {
            int c = look();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                get();
            } else if (c == '%') {
                while (look() != -1 && look() != '\n')
                    get();
            } else if (c == '/' && look(1) == '*') {
                int startLine = line_, startCol = col_;
                get();
                get();
                for (;;) {
                    if (look() == -1) {
                        diags_.push_back({Diagnostic::Severity::Error, file_, startLine,
                                          startCol, "unterminated block comment"});
                        throw ParseError{};
                    }
                    if (look() == '*' && look(1) == '/') {
                        get();
                        get();
                        break;
                    }
                    get();
                }
            } else {
                return;
            }
        }
    }

    Token scan() {
        skipTrivia();
        Token t;
        t.line = line_;
        t.column = col_;
        int c = look();
        if (c == -1) {
            t.kind = Tok::End;
            return t;
        }
        if (std::islower(c)) {
            t.kind = Tok::LowerWord;
            t.text = scanWord();
            return t;
        }
        if (std::isupper(c)) {
            t.kind = Tok::UpperWord;
            t.text = scanWord();
            return t;
        }
        if (std::isdigit(c) || ((c == '+' || c == '-') && std::isdigit(look(1)))) {
            t.kind = Tok::Number;
            t.text += static_cast<char>(get());
            while (std::isdigit(look()))
                t.text += static_cast<char>(get());
            return t;
        }
        if (c == '\'') {
            get();
            t.kind = Tok::LowerWord;
            t.quoted = true;
            for (;;) {
                int d = get();
                if (d == -1 || d == '\n')
                    failHere("unterminated quoted token");
                if (d == '\\') {
                    int e = get();
                    if (e != '\\' && e != '\'')
                        failHere("bad escape in quoted token");
                    t.text += static_cast<char>(e);
                    continue;
                }
                if (d == '\'')
                    break;
                t.text += static_cast<char>(d);
            }
            if (t.text.empty())
                failHere("empty quoted token");
            return t;
        }
        if (c == '$') {
            get();
            t.kind = Tok::DollarWord;
            t.text = "$" + scanWord();
            return t;
        }
        get();
        switch (c) {
        case '(': t.kind = Tok::LParen; return t;
        case ')': t.kind = Tok::RParen; return t;
        case '[': t.kind = Tok::LBracket; return t;
        case ']': t.kind = Tok::RBracket; return t;
        case ',': t.kind = Tok::Comma; return t;
        case '.': t.kind = Tok::Dot; return t;
        case '|': t.kind = Tok::Pipe; return t;
        case '~': t.kind = Tok::Tilde; return t;
        case '=': t.kind = Tok::Equal; return t;
        case '!':
            if (look() == '=') {
                get();
                t.kind = Tok::NotEqual;
                return t;
            }
            failHere("unexpected '!'");
        default:
            failHere(std::string("unexpected character '") +
                     static_cast<char>(c) + "'");
        }
    }

    std::string scanWord() {
        std::string word;
        while (std::isalnum(look()) || look() == '_')
            word += static_cast<char>(get());
        return word;
    }

    const std::string& text_;
    std::string file_;
    std::vector<Diagnostic>& diags_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    std::optional<Token> lookahead_;
};

const char* const kKnownRoles[] = {
    "axiom",      "hypothesis", "definition", "assumption",
    "lemma",      "theorem",    "corollary",  "conjecture",
    "negated_conjecture", "plain", "unknown",
};

class Parser {
public:
    Parser(Problem& problem, std::vector<Diagnostic>& diags,
           const std::vector<std::string>& includeDirs)
        : problem_(problem), diags_(diags), includeDirs_(includeDirs) {}

    void parseFile(const std::string& path) {
        std::error_code ec;
        fs::path canonical = fs::weakly_canonical(path, ec);
        std::string key = ec ? path : canonical.string();
        for (const std::string& open : openFiles_)
            if (open == key) {
                diags_.push_back({Diagnostic::Severity::Error, path, 0, 0,
                                  "cyclic include of '" + path + "'"});
                throw ParseError{};
            }
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            diags_.push_back({Diagnostic::Severity::Error, path, 0, 0,
                              "cannot open file"});
            throw ParseError{};
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        openFiles_.push_back(key);
        parseText(text, path, fs::path(path).parent_path().string());
        openFiles_.pop_back();
    }

    void parseText(const std::string& text, const std::string& displayName,
                   const std::string& localDir) {
        Lexer lex(text, displayName, diags_);
        while (lex.peek().kind != Tok::End)
            parseUnit(lex, localDir);
    }

private:
    void parseUnit(Lexer& lex, const std::string& localDir) {
        Token head = lex.next();
        if (head.kind != Tok::LowerWord)
            lex.fail(head, "expected 'cnf' or 'include'");
        if (head.text == "cnf") {
            parseCnf(lex);
        } else if (head.text == "include") {
            parseInclude(lex, localDir);
        } else if (head.text == "fof" || head.text == "tff" || head.text == "thf" ||
                   head.text == "tcf" || head.text == "tpi") {
            lex.fail(head, "only CNF input is supported ('" + head.text +
                               "' formulas are not)");
        } else {
            lex.fail(head, "expected 'cnf' or 'include', got '" + head.text + "'");
        }
    }

    Token expect(Lexer& lex, Tok kind, const char* what) {
        Token t = lex.next();
        if (t.kind != kind)
            lex.fail(t, std::string("expected ") + what);
        return t;
    }

    void parseCnf(Lexer& lex) {
        expect(lex, Tok::LParen, "'('");
        Token name = lex.next();
        if (name.kind != Tok::LowerWord && name.kind != Tok::Number)
            lex.fail(name, "expected clause name");
        expect(lex, Tok::Comma, "','");
        Token role = expect(lex, Tok::LowerWord, "formula role");
        bool known = false;
        for (const char* r : kKnownRoles)
            known = known || role.text == r;
        if (!known)
            lex.warn(role, "unknown formula role '" + role.text + "'");
        expect(lex, Tok::Comma, "','");

        // The formula may carry one layer of redundant parentheses.
        bool wrapped = false;
        if (lex.peek().kind == Tok::LParen) {
            wrapped = true;
            lex.next();
        }
        clauseVars_.clear();
        std::vector<Term> ante, succ;
        for (;;) {
            parseLiteral(lex, ante, succ);
            if (lex.peek().kind == Tok::Pipe) {
                lex.next();
                continue;
            }
            break;
        }
        if (wrapped)
            expect(lex, Tok::RParen, "')'");
        expect(lex, Tok::RParen, "')'");
        expect(lex, Tok::Dot, "'.'");
        problem_.inputs.push_back(
            {name.text, role.text, Clause(std::move(ante), std::move(succ))});
    }

    // literal := [~] atom | term (=|!=) term | $false
    void parseLiteral(Lexer& lex, std::vector<Term>& ante, std::vector<Term>& succ) {
        bool positive = true;
        if (lex.peek().kind == Tok::Tilde) {
            lex.next();
            positive = false;
        }
        if (lex.peek().kind == Tok::DollarWord) {
            Token d = lex.next();
            if (d.text == "$false") {
                if (!positive)
                    lex.fail(d, "'~$false' is not supported");
                // A $false disjunct contributes nothing; an empty
                // disjunction is exactly the empty clause.
                return;
            }
            if (d.text == "$true")
                lex.fail(d, "'$true' is not supported in CNF input");
            lex.fail(d, "unknown defined symbol '" + d.text + "'");
        }
        Token head = lex.peek();
        Term atom = parseTerm(lex, /*topLevel=*/true, &positive, head);
        (positive ? succ : ante).push_back(std::move(atom));
    }

    // Parses a term; at the literal level an infix (in)equality may follow,
    // which is folded into an atom with predicate symbol "=".
    Term parseTerm(Lexer& lex, bool topLevel, bool* positive, Token& headOut) {
        Token t = lex.next();
        headOut = t;
        Term parsed;
        switch (t.kind) {
        case Tok::UpperWord:
            parsed = Term::var(clauseVar(t.text));
            break;
        case Tok::LowerWord:
        case Tok::Number: {
            std::vector<Term> args;
            if (lex.peek().kind == Tok::LParen) {
                lex.next();
                for (;;) {
                    Token sub;
                    args.push_back(parseTerm(lex, false, nullptr, sub));
                    if (lex.peek().kind == Tok::Comma) {
                        lex.next();
                        continue;
                    }
                    break;
                }
                expect(lex, Tok::RParen, "')'");
            }
            bool isPredicate = topLevel && lex.peek().kind != Tok::Equal &&
                               lex.peek().kind != Tok::NotEqual;
            parsed = makeApp(lex, t, args, isPredicate);
            break;
        }
        case Tok::DollarWord:
            lex.fail(t, "defined symbol '" + t.text + "' is only allowed as a literal");
        default:
            lex.fail(t, "expected a term");
        }

        if (topLevel &&
            (lex.peek().kind == Tok::Equal || lex.peek().kind == Tok::NotEqual)) {
            Token op = lex.next();
            if (!equalityWarned_) {
                equalityWarned_ = true;
                lex.warn(op, "equality is treated as an ordinary predicate "
                             "(no equality reasoning)");
            }
            if (op.kind == Tok::NotEqual) {
                if (positive && !*positive)
                    lex.fail(op, "'~' combined with '!='");
                if (positive)
                    *positive = false;
            }
            Token sub;
            Term rhs = parseTerm(lex, false, nullptr, sub);
            std::string err;
            auto sym = problem_.sig.intern("=", 2, true, &err);
            if (!sym)
                lex.fail(op, err);
            parsed = Term::app(*sym, {std::move(parsed), std::move(rhs)});
        }
        return parsed;
    }

    Term makeApp(Lexer& lex, const Token& head, std::vector<Term>& args,
                 bool isPredicate) {
        std::string err;
        auto sym = problem_.sig.intern(head.text, static_cast<uint32_t>(args.size()),
                                       isPredicate, &err);
        if (!sym)
            lex.fail(head, err);
        return Term::app(*sym, std::move(args));
    }

    VarId clauseVar(const std::string& name) {
        for (const auto& [n, v] : clauseVars_)
            if (n == name)
                return v;
        VarId v = problem_.vars.named(name);
        clauseVars_.push_back({name, v});
        return v;
    }

    void parseInclude(Lexer& lex, const std::string& localDir) {
        expect(lex, Tok::LParen, "'('");
        Token file = lex.next();
        if (file.kind != Tok::LowerWord || !file.quoted)
            lex.fail(file, "expected quoted include path");
        if (lex.peek().kind == Tok::Comma) {
            lex.next();
            lex.warn(lex.peek(), "include formula selection is ignored");
            // Skip the bracketed selection list.
            expect(lex, Tok::LBracket, "'['");
            int depth = 1;
            while (depth > 0) {
                Token t = lex.next();
                if (t.kind == Tok::End)
                    lex.fail(t, "unterminated include selection");
                if (t.kind == Tok::LBracket)
                    ++depth;
                if (t.kind == Tok::RBracket)
                    --depth;
            }
        }
        expect(lex, Tok::RParen, "')'");
        expect(lex, Tok::Dot, "'.'");

        fs::path target(file.text);
        std::vector<fs::path> candidates;
        if (target.is_absolute()) {
            candidates.push_back(target);
        } else {
            for (const std::string& dir : includeDirs_)
                candidates.push_back(fs::path(dir) / target);
            candidates.push_back(fs::path(localDir.empty() ? "." : localDir) / target);
        }
        for (const fs::path& cand : candidates) {
            std::error_code ec;
            if (fs::exists(cand, ec) && !ec) {
                parseFile(cand.string());
                return;
            }
        }
        lex.fail(file, "cannot resolve include '" + file.text + "'");
    }

    Problem& problem_;
    std::vector<Diagnostic>& diags_;
    const std::vector<std::string>& includeDirs_;
    std::vector<std::string> openFiles_;
    std::vector<std::pair<std::string, VarId>> clauseVars_;
    bool equalityWarned_ = false;
};

} // namespace

ParseResult parseProblemFile(const std::string& path,
                             const std::vector<std::string>& includeDirs) {
    ParseResult result;
    Problem problem;
    try {
        Parser parser(problem, result.diagnostics, includeDirs);
        parser.parseFile(path);
        result.problem = std::move(problem);
    } catch (const ParseError&) {
        // Diagnostics already record the failure.
    }
    return result;
}

ParseResult parseProblemText(const std::string& text, const std::string& displayName,
                             const std::vector<std::string>& includeDirs) {
    ParseResult result;
    Problem problem;
    try {
        Parser parser(problem, result.diagnostics, includeDirs);
        parser.parseText(text, displayName, "");
        result.problem = std::move(problem);
    } catch (const ParseError&) {
    }
    return result;
}

} // namespace crp
