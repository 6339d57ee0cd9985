#include "artin/runner.hpp"

#include <cctype>
#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "artin/invariants.hpp"
#include "artin/verifier.hpp"

namespace artin {

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& t) {
    std::size_t a = t.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = t.find_last_not_of(" \t\r\n");
    return t.substr(a, b - a + 1);
}

/// Splits on every separator and trims the pieces; an all-blank input is the
/// empty list, but a blank piece between separators is kept (and rejected by
/// whatever parses it).
std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> out;
    if (trim(text).empty()) return out;
    std::size_t start = 0;
    while (true) {
        std::size_t at = text.find(sep, start);
        out.push_back(trim(at == std::string::npos ? text.substr(start)
                                                   : text.substr(start, at - start)));
        if (at == std::string::npos) break;
        start = at + 1;
    }
    return out;
}

bool is_ident(const std::string& t) {
    if (t.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(t[0])) && t[0] != '_') return false;
    for (char ch : t)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
    return true;
}

/// Single-line scanner with position-carrying diagnostics.
struct Cursor {
    std::string s;
    std::size_t line;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("line " + std::to_string(line) + ", column " +
                         std::to_string(pos + 1) + ": " + msg);
    }
    void ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eol() {
        ws();
        return pos >= s.size();
    }
    void finish() {
        if (!eol()) fail("unexpected trailing text");
    }
    bool lit(const std::string& tok) {
        ws();
        if (s.compare(pos, tok.size(), tok) != 0) return false;
        pos += tok.size();
        return true;
    }
    void expect(const std::string& tok) {
        if (!lit(tok)) fail("expected '" + tok + "'");
    }
    std::string ident() {
        ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        std::string t = s.substr(start, pos - start);
        if (!is_ident(t)) fail("expected a name");
        return t;
    }
    std::string word() {
        ws();
        std::size_t start = pos;
        while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected a word");
        return s.substr(start, pos - start);
    }
    std::uint64_t number() {
        ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected a number");
        return std::stoull(s.substr(start, pos - start));
    }
    /// Raw slice up to the next occurrence of stop, which is consumed.
    std::string until(char stop) {
        std::size_t at = s.find(stop, pos);
        if (at == std::string::npos) fail(std::string("expected '") + stop + "'");
        std::string r = s.substr(pos, at - pos);
        pos = at + 1;
        return r;
    }
    std::string bracket() {
        expect("[");
        return until(']');
    }
    std::string rest() {
        std::string r = s.substr(pos);
        pos = s.size();
        return r;
    }
};

struct NamedMap {
    std::string source, target;
    AlgebraMorphism phi;
};

struct NamedModule {
    std::string ring;
    ModulePtr mod;
};

struct Session {
    RunFlags flags;
    RunCaps caps;
    std::optional<FieldConfig> field;
    std::map<std::string, CompiledRing> rings;
    std::map<std::string, NamedMap> maps;
    std::map<std::string, NamedModule> modules;

    const FieldConfig& need_field(Cursor& c) const {
        if (!field) c.fail("no field declared");
        return *field;
    }
    void claim_name(Cursor& c, const std::string& name) const {
        if (rings.count(name) || maps.count(name) || modules.count(name))
            c.fail("name '" + name + "' is already declared");
    }
    const CompiledRing& ring(Cursor& c, const std::string& name) const {
        auto it = rings.find(name);
        if (it == rings.end()) c.fail("unknown ring '" + name + "'");
        return it->second;
    }
    const NamedMap& map(Cursor& c, const std::string& name) const {
        auto it = maps.find(name);
        if (it == maps.end()) c.fail("unknown morphism '" + name + "'");
        return it->second;
    }
    const NamedModule& module(Cursor& c, const std::string& name) const {
        auto it = modules.find(name);
        if (it == modules.end()) c.fail("unknown module '" + name + "'");
        return it->second;
    }
};

const char* bs(bool b) { return b ? "true" : "false"; }

std::string vec_str(const Vec& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(v[i]);
    }
    return out + "]";
}

std::string elems_str(const CompiledRing& r, const std::vector<Element>& es) {
    std::string out = "[";
    for (std::size_t i = 0; i < es.size(); ++i) {
        if (i) out += ", ";
        out += r.to_string(es[i]);
    }
    return out + "]";
}

Vec parse_coords(const FieldConfig& f, Cursor& c, const std::string& inner, std::size_t want) {
    std::vector<std::string> parts = split_list(inner, ',');
    if (parts.size() != want)
        c.fail("expected " + std::to_string(want) + " coordinates, got " +
               std::to_string(parts.size()));
    Vec v;
    for (const std::string& piece : parts) {
        std::size_t used = 0;
        long long value = 0;
        try {
            value = std::stoll(piece, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != piece.size() || piece.empty()) c.fail("bad coordinate '" + piece + "'");
        v.push_back(f.reduce(value));
    }
    return v;
}

void decl_field(Session& ss, Cursor& c) {
    if (ss.field) c.fail("field already declared");
    std::uint64_t p = c.number();
    c.finish();
    if (p > ss.caps.max_p)
        c.fail("field modulus " + std::to_string(p) + " exceeds the cap " +
               std::to_string(ss.caps.max_p) + " (see --unsafe-raise-caps)");
    try {
        ss.field.emplace(p);
    } catch (const std::exception& e) {
        c.fail(e.what());
    }
}

void decl_ring(Session& ss, Cursor& c) {
    const FieldConfig& f = ss.need_field(c);
    std::string name = c.ident();
    ss.claim_name(c, name);
    c.expect("vars");
    std::vector<std::string> vars = split_list(c.until(':'), ',');
    if (vars.size() > ss.caps.max_n)
        c.fail("too many generators (cap " + std::to_string(ss.caps.max_n) + ")");
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!is_ident(vars[i])) c.fail("bad generator name '" + vars[i] + "'");
        for (std::size_t j = 0; j < i; ++j)
            if (vars[i] == vars[j]) c.fail("duplicate generator '" + vars[i] + "'");
    }
    Presentation pres{f, vars, {}};
    try {
        for (const std::string& text : split_list(c.rest(), ','))
            pres.relations.push_back(parse_poly(f, vars, text));
        ss.rings.emplace(name, compile_ring(pres, CompileLimits{ss.caps.max_dim, 0}));
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        c.fail(std::string("ring '") + name + "': " + e.what());
    }
}

void decl_map(Session& ss, Cursor& c) {
    std::string name = c.ident();
    ss.claim_name(c, name);
    std::string src = c.ident();
    c.expect("->");
    std::string dst = c.ident();
    c.expect(":");
    const CompiledRing& a = ss.ring(c, src);
    const CompiledRing& b = ss.ring(c, dst);
    std::vector<std::optional<Element>> images(a.variables().size());
    for (const std::string& item : split_list(c.rest(), ',')) {
        std::size_t arrow = item.find("->");
        if (arrow == std::string::npos)
            c.fail("expected '<generator> -> <expression>', got '" + item + "'");
        std::string v = trim(item.substr(0, arrow));
        std::string expr = trim(item.substr(arrow + 2));
        std::size_t idx = a.variables().size();
        for (std::size_t i = 0; i < a.variables().size(); ++i)
            if (a.variables()[i] == v) idx = i;
        if (idx == a.variables().size())
            c.fail("'" + v + "' is not a generator of '" + src + "'");
        if (images[idx]) c.fail("generator '" + v + "' assigned twice");
        try {
            images[idx] = b.parse(expr);
        } catch (const std::exception& e) {
            c.fail(std::string("image of '") + v + "': " + e.what());
        }
    }
    std::vector<Element> flat;
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (!images[i]) c.fail("no image for generator '" + a.variables()[i] + "'");
        flat.push_back(*images[i]);
    }
    try {
        ss.maps.emplace(name, NamedMap{src, dst, morphism_from_images(a, b.algebra(), flat)});
    } catch (const std::exception& e) {
        c.fail(std::string("map '") + name + "': " + e.what());
    }
}

void decl_module(Session& ss, Cursor& c) {
    std::string name = c.ident();
    ss.claim_name(c, name);
    c.expect("over");
    std::string rname = c.ident();
    const CompiledRing& r = ss.ring(c, rname);
    c.expect(":");
    ModulePtr mod;
    if (c.lit("free")) {
        std::uint64_t k = c.number();
        if (k * r.algebra()->dim() > ss.caps.max_dim)
            c.fail("module dimension exceeds the cap " + std::to_string(ss.caps.max_dim));
        mod = FiniteModule::free_module(r.algebra(), k);
    } else if (c.lit("coker")) {
        std::vector<std::string> rows = split_list(c.bracket(), ';');
        if (rows.empty()) c.fail("empty presentation matrix");
        std::vector<std::vector<Element>> entries;
        std::size_t ncols = 0;
        for (const std::string& row : rows) {
            std::vector<Element> parsed;
            try {
                for (const std::string& cell : split_list(row, ','))
                    parsed.push_back(r.parse(cell));
            } catch (const std::exception& e) {
                c.fail(std::string("presentation matrix: ") + e.what());
            }
            if (entries.empty())
                ncols = parsed.size();
            else if (parsed.size() != ncols)
                c.fail("presentation matrix rows have different lengths");
            entries.push_back(std::move(parsed));
        }
        if (ncols == 0) c.fail("empty presentation matrix row");
        if (rows.size() * r.algebra()->dim() > ss.caps.max_dim)
            c.fail("module dimension exceeds the cap " + std::to_string(ss.caps.max_dim));
        std::vector<std::vector<Element>> columns;
        for (std::size_t j = 0; j < ncols; ++j) {
            std::vector<Element> col;
            for (std::size_t i = 0; i < entries.size(); ++i) col.push_back(entries[i][j]);
            columns.push_back(std::move(col));
        }
        mod = FiniteModule::cokernel(r.algebra(), entries.size(), columns);
    } else {
        c.fail("expected 'free <k>' or 'coker [entries; ...]'");
    }
    c.finish();
    ss.modules.emplace(name, NamedModule{rname, std::move(mod)});
}

int cmd_invariants(Session& ss, Cursor& c, std::ostream& out) {
    const CompiledRing& r = ss.ring(c, c.ident());
    c.finish();
    InvariantReport rep = invariant_report(r.algebra());
    out << "edim " << rep.edim << "\n";
    out << "socle_dim " << rep.socle_dim << "\n";
    out << "nilpotency_index " << rep.nilpotency_index << "\n";
    out << "gorenstein " << bs(rep.is_gorenstein) << "\n";
    out << "ci " << bs(rep.is_ci) << "\n";
    out << "mu " << rep.mu << "\n";
    return 0;
}

int cmd_flat(Session& ss, Cursor& c, std::ostream& out) {
    const NamedModule& nm = ss.module(c, c.ident());
    c.expect("over");
    std::string over = c.ident();
    c.finish();
    ModulePtr target = nm.mod;
    if (ss.rings.count(over)) {
        if (over != nm.ring)
            c.fail("module is over '" + nm.ring + "', not '" + over + "'");
    } else if (ss.maps.count(over)) {
        const NamedMap& f = ss.maps.at(over);
        if (f.target != nm.ring)
            c.fail("morphism '" + over + "' does not land in '" + nm.ring + "'");
        target = restrict_scalars(f.phi, nm.mod);
    } else {
        c.fail("unknown ring or morphism '" + over + "'");
    }
    FlatnessVerdict v = is_flat(target);
    out << "flat " << bs(v.flat) << "\n";
    out << "min_generators " << v.min_generators << "\n";
    return v.flat ? 0 : 1;
}

int cmd_wtf(Session& ss, Cursor& c, std::ostream& out) {
    const NamedModule& nm = ss.module(c, c.ident());
    std::string mode = ss.flags.mode;
    std::size_t trials = ss.flags.trials;
    while (!c.eol()) {
        if (c.lit("--mode"))
            mode = c.word();
        else if (c.lit("--trials"))
            trials = c.number();
        else
            c.fail("unknown option");
    }
    WtfMode wm;
    if (mode == "exhaustive")
        wm = WtfMode::exhaustive;
    else if (mode == "sampled")
        wm = WtfMode::sampled;
    else
        c.fail("mode must be 'exhaustive' or 'sampled'");
    WtfVerdict v = is_weakly_torsion_free(nm.mod, wm, trials, ss.flags.seed);
    out << "weakly_torsion_free " << bs(v.weakly_torsion_free) << "\n";
    out << "exhaustive " << bs(v.exhaustive) << "\n";
    out << "lambdas_checked " << v.lambdas_checked << "\n";
    if (v.witness) {
        out << "witness_lambda " << vec_str(v.witness->lambda) << "\n";
        out << "witness_vector " << vec_str(v.witness->vector) << "\n";
    }
    return v.weakly_torsion_free ? 0 : 1;
}

int cmd_ci(Session& ss, Cursor& c, std::ostream& out) {
    const CompiledRing& r = ss.ring(c, c.ident());
    c.finish();
    CompleteIntersection v = is_complete_intersection(r.algebra());
    out << "ci " << bs(v.is_ci) << "\n";
    out << "mu " << v.mu << "\n";
    return v.is_ci ? 0 : 1;
}

int cmd_wiebe(Session& ss, Cursor& c, std::ostream& out) {
    const CompiledRing& r = ss.ring(c, c.ident());
    c.finish();
    std::vector<Element> u = minimal_generators(r.algebra());
    std::optional<WiebeMatrix> w = wiebe_matrix(r.algebra(), u, ss.caps.max_n);
    if (!w) {
        out << "wiebe none\n";
        return 1;
    }
    out << "wiebe found\n";
    out << "u " << elems_str(r, w->u) << "\n";
    for (const std::vector<Element>& row : w->entries)
        out << "row " << elems_str(r, row) << "\n";
    out << "det " << r.to_string(w->det) << "\n";
    return 0;
}

int cmd_theorem1(Session& ss, Cursor& c, std::ostream& out) {
    const NamedMap& f = ss.map(c, c.ident());
    const NamedModule& nm = ss.module(c, c.ident());
    c.finish();
    if (nm.ring != f.target)
        c.fail("module is over '" + nm.ring + "', not the morphism target '" + f.target + "'");
    Theorem1Report rep = check_theorem1(f.phi, nm.mod, ss.caps.max_n);
    out << "hypothesis morphism_local " << bs(rep.hypotheses.morphism_local) << "\n";
    out << "hypothesis edim_le " << bs(rep.hypotheses.edim_le) << "\n";
    out << "hypothesis module_nonzero " << bs(rep.hypotheses.module_nonzero) << "\n";
    out << "hypothesis module_a_flat " << bs(rep.hypotheses.module_a_flat) << "\n";
    out << "conclusion phi_flat " << bs(rep.conclusions.phi_flat) << "\n";
    out << "conclusion phi_rank " << rep.conclusions.phi_rank << "\n";
    out << "conclusion edim_equal " << bs(rep.conclusions.edim_equal) << "\n";
    out << "conclusion fiber_ci " << bs(rep.conclusions.fiber_ci) << "\n";
    out << "conclusion fiber_mu " << rep.conclusions.fiber_mu << "\n";
    out << "conclusion module_b_flat " << bs(rep.conclusions.module_b_flat) << "\n";
    out << "conclusion module_rank " << rep.conclusions.module_rank << "\n";
    out << "conclusion delta_spans_fiber_socle "
        << bs(rep.conclusions.delta_spans_fiber_socle) << "\n";
    if (rep.verdict == Theorem1Verdict::pass) {
        out << "verdict Pass\n";
        return 0;
    }
    if (rep.verdict == Theorem1Verdict::hypothesis_not_met)
        out << "verdict HypothesisNotMet(" << rep.detail << ")\n";
    else
        out << "verdict TheoremViolation(" << rep.detail << ")\n";
    return 1;
}

int cmd_lemma_cert(Session& ss, Cursor& c, std::ostream& out) {
    std::string rname = c.ident();
    const CompiledRing& r = ss.ring(c, rname);
    auto parse_elems = [&](const std::string& inner) {
        std::vector<Element> es;
        try {
            for (const std::string& t : split_list(inner, ',')) es.push_back(r.parse(t));
        } catch (const std::exception& e) {
            c.fail(std::string("ring element list: ") + e.what());
        }
        return es;
    };
    std::vector<Element> x = parse_elems(c.bracket());
    std::vector<Element> u = parse_elems(c.bracket());
    std::vector<std::string> wrows = split_list(c.bracket(), ';');
    const NamedModule& nm = ss.module(c, c.ident());
    Vec m = parse_coords(r.algebra()->field(), c, c.bracket(), nm.mod->dim());
    std::string path = c.word();
    c.finish();
    if (nm.ring != rname) c.fail("module is over '" + nm.ring + "', not '" + rname + "'");
    std::size_t n = x.size();
    if (n > ss.caps.max_n)
        c.fail("n exceeds the cap " + std::to_string(ss.caps.max_n));
    if (u.size() != n || wrows.size() != n)
        c.fail("x, u and W must all have size n");
    std::vector<std::vector<Element>> w;
    for (const std::string& row : wrows) {
        std::vector<Element> parsed = parse_elems(row);
        if (parsed.size() != n) c.fail("W must be an n x n matrix");
        w.push_back(std::move(parsed));
    }
    LemmaInstance inst = LemmaInstance::make(nm.mod, x, u, w, ss.caps.max_n);
    try {
        MembershipCertificate cert = membership_certificate(inst, m);
        std::ofstream file(path);
        if (!file) c.fail("cannot write '" + path + "'");
        write_certificate(file, cert);
        out << "certificate " << path << "\n";
        out << "levels " << cert.trace.size() << "\n";
        return 0;
    } catch (const HypothesisTwoViolated& e) {
        out << "certificate-failed HypothesisTwoViolated level " << e.level() << " subset "
            << e.subset() << "\n";
        return 1;
    } catch (const PreconditionFailed& e) {
        out << "certificate-failed PreconditionFailed " << e.what() << "\n";
        return 1;
    }
}

int cmd_verify_cert(Session& ss, Cursor& c, std::ostream& out) {
    std::string path = c.word();
    c.finish();
    std::ifstream file(path);
    if (!file) c.fail("cannot read '" + path + "'");
    try {
        MembershipCertificate cert = read_certificate(file);
        if (cert.instance.n() > ss.caps.max_n)
            c.fail("certificate n exceeds the cap " + std::to_string(ss.caps.max_n));
        std::string why;
        bool ok = verify_certificate(cert, &why);
        out << "valid " << bs(ok) << "\n";
        if (!ok) out << "reason " << why << "\n";
        return ok ? 0 : 1;
    } catch (const std::logic_error& e) {
        out << "valid false\n";
        out << "reason " << e.what() << "\n";
        return 1;
    }
}

int cmd_sweep(Session& ss, Cursor& c, std::ostream& out) {
    const FieldConfig& f = ss.need_field(c);
    std::optional<GenKind> kind;
    std::uint64_t seed = ss.flags.seed;
    std::size_t count = 100;
    while (!c.eol()) {
        if (c.lit("--kind")) {
            try {
                kind = gen_kind_from_string(c.word());
            } catch (const std::exception& e) {
                c.fail(e.what());
            }
        } else if (c.lit("--seed")) {
            seed = c.number();
        } else if (c.lit("--count")) {
            count = c.number();
        } else {
            c.fail("unknown option");
        }
    }
    if (!kind) c.fail("sweep requires --kind");
    SweepReport rep = sweep_theorem1(*kind, f.p(), seed, count);
    out << "kind " << to_string(rep.kind) << "\n";
    out << "p " << rep.p << "\n";
    out << "seed " << rep.seed << "\n";
    out << "count " << rep.count << "\n";
    out << "passes " << rep.passes << "\n";
    out << "hypothesis_failures " << rep.hypothesis_failures << "\n";
    out << "violations " << rep.violations << "\n";
    for (const std::string& d : rep.violation_details) out << "violation " << d << "\n";
    return rep.violations == 0 ? 0 : 1;
}

int run_check(Session& ss, Cursor& c, std::ostream& out) {
    std::string sub = c.word();
    if (sub == "invariants") return cmd_invariants(ss, c, out);
    if (sub == "flat") return cmd_flat(ss, c, out);
    if (sub == "wtf") return cmd_wtf(ss, c, out);
    if (sub == "ci") return cmd_ci(ss, c, out);
    if (sub == "wiebe") return cmd_wiebe(ss, c, out);
    if (sub == "theorem1") return cmd_theorem1(ss, c, out);
    if (sub == "lemma-cert") return cmd_lemma_cert(ss, c, out);
    if (sub == "verify-cert") return cmd_verify_cert(ss, c, out);
    if (sub == "sweep") return cmd_sweep(ss, c, out);
    c.fail("unknown check '" + sub + "'");
}

} // namespace

int run_instance_text(const std::string& text, const RunFlags& flags, std::ostream& out,
                      std::ostream& err) {
    Session ss;
    ss.flags = flags;
    ss.caps = flags.raise_caps ? kRaisedRunCaps : kDefaultRunCaps;
    int worst = 0;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    try {
        while (std::getline(in, raw)) {
            ++line_no;
            std::string body = trim(raw.substr(0, raw.find('#')));
            if (body.empty()) continue;
            Cursor c{body, line_no};
            std::string head = c.ident();
            if (head == "field") {
                decl_field(ss, c);
            } else if (head == "ring") {
                decl_ring(ss, c);
            } else if (head == "map") {
                decl_map(ss, c);
            } else if (head == "module") {
                decl_module(ss, c);
            } else if (head == "check") {
                out << body << "\n";
                auto t0 = std::chrono::steady_clock::now();
                int rc = run_check(ss, c, out);
                if (flags.timing) {
                    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
                    out << "time_ms " << ms << "\n";
                }
                out << "\n";
                if (rc > worst) worst = rc;
            } else {
                c.fail("unknown directive '" + head + "'");
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return worst;
}

int run_instance_file(const std::string& path, const RunFlags& flags, std::ostream& out,
                      std::ostream& err) {
    std::ifstream f(path);
    if (!f) {
        err << "error: cannot open '" << path << "'\n";
        return 2;
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    return run_instance_text(buf.str(), flags, out, err);
}

void write_certificate(std::ostream& out, const MembershipCertificate& cert) {
    const LemmaInstance& inst = cert.instance;
    const AlgebraPtr& b = inst.algebra();
    const ModulePtr& mod = inst.module();
    const std::size_t d = b->dim();
    const std::size_t dm = mod->dim();
    const std::size_t n = inst.n();

    out << "artin-certificate " << kCertificateFormatVersion << "\n";
    out << "p " << b->field().p() << "\n";
    out << "algebra-dim " << d << "\n";
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            out << "mult " << i << " " << j << " :";
            for (std::size_t k = 0; k < d; ++k) out << " " << b->struct_const(i, j, k);
            out << "\n";
        }
    out << "module-dim " << dm << "\n";
    for (std::size_t i = 0; i < d; ++i) {
        out << "action " << i << " :";
        for (std::size_t r = 0; r < dm; ++r)
            for (std::size_t cc = 0; cc < dm; ++cc) out << " " << mod->action(i).at(r, cc);
        out << "\n";
    }
    auto put_vec = [&](const Vec& v) {
        for (Scalar s : v) out << " " << s;
        out << "\n";
    };
    out << "n " << n << "\n";
    for (std::size_t k = 0; k < n; ++k) {
        out << "x " << k << " :";
        put_vec(inst.x()[k].coords());
    }
    for (std::size_t k = 0; k < n; ++k) {
        out << "u " << k << " :";
        put_vec(inst.u()[k].coords());
    }
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t cc = 0; cc < n; ++cc) {
            out << "w " << r << " " << cc << " :";
            put_vec(inst.w()[r][cc].coords());
        }
    out << "m :";
    put_vec(cert.m);
    for (std::size_t k = 0; k < cert.b.size(); ++k) {
        out << "b " << k << " :";
        put_vec(cert.b[k]);
    }
    out << "trace-levels " << cert.trace.size() << "\n";
    for (std::size_t ell = 0; ell < cert.trace.size(); ++ell) {
        out << "level " << ell << " entries " << cert.trace[ell].size() << "\n";
        for (const CertLevelEntry& e : cert.trace[ell]) {
            out << "entry " << e.subset << " g :";
            for (Scalar s : e.g) out << " " << s;
            out << " a :";
            for (const Vec& ak : e.a)
                for (Scalar s : ak) out << " " << s;
            out << "\n";
        }
    }
    out << "end artin-certificate\n";
}

namespace {

struct CertReader {
    std::istream& in;

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error("certificate: " + msg);
    }
    std::string tok() {
        std::string t;
        if (!(in >> t)) fail("unexpected end of data");
        return t;
    }
    void expect(const std::string& w) {
        std::string t = tok();
        if (t != w) fail("expected '" + w + "', got '" + t + "'");
    }
    void expect_index(const std::string& w, std::uint64_t i) {
        expect(w);
        if (num() != i) fail("'" + w + "' records are out of order");
    }
    std::uint64_t num() {
        std::string t = tok();
        if (t.empty()) fail("expected a number");
        for (char ch : t)
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                fail("expected a number, got '" + t + "'");
        return std::stoull(t);
    }
    Scalar scalar(const FieldConfig& f) {
        std::uint64_t v = num();
        if (v >= f.p()) fail("scalar out of range");
        return Scalar(v);
    }
    Vec vec(const FieldConfig& f, std::size_t len) {
        Vec v;
        v.reserve(len);
        for (std::size_t i = 0; i < len; ++i) v.push_back(scalar(f));
        return v;
    }
};

} // namespace

MembershipCertificate read_certificate(std::istream& in) {
    CertReader r{in};
    r.expect("artin-certificate");
    if (r.num() != std::uint64_t(kCertificateFormatVersion))
        r.fail("unsupported format version");
    r.expect("p");
    std::uint64_t p = r.num();
    FieldConfig f(p);
    r.expect("algebra-dim");
    std::size_t d = r.num();
    if (d == 0 || d > kRaisedRunCaps.max_dim) r.fail("algebra dimension out of range");
    std::vector<Scalar> consts(d * d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            r.expect_index("mult", i);
            if (r.num() != j) r.fail("'mult' records are out of order");
            r.expect(":");
            for (std::size_t k = 0; k < d; ++k) consts[(i * d + j) * d + k] = r.scalar(f);
        }
    AlgebraPtr b = FiniteLocalAlgebra::make(f, d, consts, auto_validate(d));
    r.expect("module-dim");
    std::size_t dm = r.num();
    if (dm > kRaisedRunCaps.max_dim) r.fail("module dimension out of range");
    std::vector<Mat> actions;
    for (std::size_t i = 0; i < d; ++i) {
        r.expect_index("action", i);
        r.expect(":");
        Mat a(f, dm, dm);
        for (std::size_t row = 0; row < dm; ++row)
            for (std::size_t col = 0; col < dm; ++col) a.at(row, col) = r.scalar(f);
        actions.push_back(std::move(a));
    }
    ModulePtr mod = FiniteModule::make(b, std::move(actions), auto_validate(dm));
    r.expect("n");
    std::size_t n = r.num();
    if (n > kRaisedRunCaps.max_n) r.fail("n out of range");
    auto read_elems = [&](const std::string& key) {
        std::vector<Element> es;
        for (std::size_t k = 0; k < n; ++k) {
            r.expect_index(key, k);
            r.expect(":");
            es.push_back(b->element(r.vec(f, d)));
        }
        return es;
    };
    std::vector<Element> x = read_elems("x");
    std::vector<Element> u = read_elems("u");
    std::vector<std::vector<Element>> w;
    for (std::size_t row = 0; row < n; ++row) {
        std::vector<Element> wr;
        for (std::size_t col = 0; col < n; ++col) {
            r.expect_index("w", row);
            if (r.num() != col) r.fail("'w' records are out of order");
            r.expect(":");
            wr.push_back(b->element(r.vec(f, d)));
        }
        w.push_back(std::move(wr));
    }
    r.expect("m");
    r.expect(":");
    Vec m = r.vec(f, dm);
    std::vector<Vec> bco;
    for (std::size_t k = 0; k < n; ++k) {
        r.expect_index("b", k);
        r.expect(":");
        bco.push_back(r.vec(f, dm));
    }
    r.expect("trace-levels");
    std::size_t levels = r.num();
    if (levels > kRaisedRunCaps.max_n + 1) r.fail("trace level count out of range");
    std::vector<std::vector<CertLevelEntry>> trace;
    for (std::size_t ell = 0; ell < levels; ++ell) {
        r.expect_index("level", ell);
        r.expect("entries");
        std::size_t count = r.num();
        if (count > (std::size_t(1) << n)) r.fail("trace entry count out of range");
        std::vector<CertLevelEntry> level;
        for (std::size_t e = 0; e < count; ++e) {
            r.expect("entry");
            std::uint64_t subset = r.num();
            if (subset >= (std::uint64_t(1) << n)) r.fail("subset mask out of range");
            r.expect("g");
            r.expect(":");
            Vec g = r.vec(f, dm);
            r.expect("a");
            r.expect(":");
            std::vector<Vec> a;
            for (std::size_t k = 0; k < n; ++k) a.push_back(r.vec(f, dm));
            level.push_back({std::uint32_t(subset), std::move(g), std::move(a)});
        }
        trace.push_back(std::move(level));
    }
    r.expect("end");
    r.expect("artin-certificate");
    LemmaInstance inst = LemmaInstance::make(mod, std::move(x), std::move(u), std::move(w),
                                             kRaisedRunCaps.max_n);
    return MembershipCertificate{std::move(inst), std::move(m), std::move(bco),
                                 std::move(trace)};
}

} // namespace artin
