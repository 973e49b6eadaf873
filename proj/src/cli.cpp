#include "omega/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

#include "omega/codes.hpp"
#include "omega/corpus.hpp"
#include "omega/eval.hpp"
#include "omega/kleeneo.hpp"
#include "omega/program.hpp"
#include "omega/schuette.hpp"
#include "omega/transforms.hpp"

namespace omega {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string readFile(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot open " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Natural decimal(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw UsageError("expected a decimal number or an s-expression");
  return Natural(s);
}

// A code file holds an s-expression or a decimal number.
Natural readCode(const std::string& file) {
  std::string t = trim(readFile(file));
  if (!t.empty() && t[0] == '(') return codeFromSExpr(parseSExpr(t));
  return decimal(t);
}

// A program index: decimal, or a program s-expression.
Natural readIndex(const std::string& text) {
  std::string t = trim(text);
  if (!t.empty() && t[0] == '(') return programFromSExpr(parseSExpr(t))->encode();
  return decimal(t);
}

Natural readIndexArg(const std::string& arg) {
  std::ifstream probe(arg);
  return readIndex(probe ? readFile(arg) : arg);
}

Sequent readSequent(const std::string& file) {
  auto exprs = parseSExprs(readFile(file));
  if (exprs.empty()) throw UsageError(file + ": empty");
  return Sequent::fromSExpr(exprs[0]);
}

ONotation readNotation(const std::string& text) {
  std::string t = trim(text);
  if (!t.empty() && t[0] == '(') return notationFromSExpr(parseSExpr(t));
  auto o = ONotation::parse(t);
  if (!o) throw UsageError("bad notation " + t);
  return *o;
}

int verdictStatus(const Verdict& v) {
  switch (v.status) {
    case VerdictStatus::VerifiedComplete:
    case VerdictStatus::VerifiedToBound: return kExitOk;
    case VerdictStatus::Refuted: return kExitRefuted;
    case VerdictStatus::ResourceExhausted: return kExitExhausted;
  }
  return kExitUsage;
}

std::string nodeLine(const Natural& a) {
  if (a == 0) return "0";
  try {
    Code c = Code::decode(a);
    std::string s = std::string(ruleName(c.rule)) + " " + endOf(c).str();
    if (c.main) s += " " + c.main->str();
    return s;
  } catch (const MalformedCode&) {
    return "malformed " + toDecimal(a);
  }
}

std::string pathText(const Path& p) {
  std::string s;
  for (const auto& x : p) s += (s.empty() ? "" : ",") + toDecimal(x);
  return "<" + s + ">";
}

// Indented prefix: premises 0..breadth-1 of omega nodes, up to depth.
void printTree(std::ostream& out, const Natural& a, const CheckBounds& b, Path& path) {
  out << std::string(2 * path.size(), ' ') << pathText(path) << " " << nodeLine(a) << "\n";
  if (a == 0 || path.size() + 1 >= b.depth) return;
  Code c;
  try {
    c = Code::decode(a);
  } catch (const MalformedCode&) {
    return;
  }
  auto visit = [&](std::uint64_t n, const Natural& sub) {
    path.push_back(Natural(static_cast<unsigned long>(n)));
    printTree(out, sub, b, path);
    path.pop_back();
  };
  if (c.rule == Rule::Omega) {
    for (auto n : b.sample()) {
      auto r = evalIndex(c.index(), {Natural(static_cast<unsigned long>(n))}, b.fuel);
      if (r.ok()) {
        visit(n, r.value);
      } else {
        out << std::string(2 * (path.size() + 1), ' ') << pathText(path) << "," << n << " undefined\n";
      }
    }
  } else {
    for (std::size_t i = 0; i < c.subs.size(); ++i) visit(i, c.subs[i]);
  }
}

void emitCode(std::ostream& out, const Natural& a, const std::string& emit, const CheckBounds& b) {
  if (emit == "number") {
    out << toDecimal(a) << "\n";
  } else if (emit == "dot") {
    out << codeToDot(a, b);
  } else if (emit == "tree") {
    Path p;
    printTree(out, a, b, p);
  } else {
    out << codeToSExpr(a).str() << "\n";
  }
}

std::vector<std::uint64_t> parseChoices(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(decimal(item).get_ui());
  }
  return out;
}

struct Common {
  std::uint64_t fuel = 1000000;
  std::uint32_t depth = 8;
  std::uint32_t breadth = 6;
  std::uint64_t seed = 0;
  std::string emit = "code";

  CheckBounds bounds() const {
    CheckBounds b;
    b.depth = depth;
    b.breadth = breadth;
    b.seed = seed;
    b.fuel = fuel;
    return b;
  }
};

void addBounds(CLI::App* c, Common& o) {
  c->add_option("--depth", o.depth, "Depth bound");
  c->add_option("--breadth", o.breadth, "Omega premises explored");
  c->add_option("--seed", o.seed, "Sampling seed");
}

}  // namespace

int runCommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Codes of omega-proofs: search, checking and transformations", "omega"};
  app.require_subcommand(1);
  Common o;
  std::string file, op, delta, system = "rec", choices, notation, witness, sentence;
  bool cut = false;
  std::function<int()> action;

  auto* prove = app.add_subcommand("prove", "Proof search on a sequent file");
  prove->add_option("file", file, "Sequent file")->required();
  prove->add_option("--fuel", o.fuel, "Evaluation fuel");
  prove->add_option("--emit", o.emit, "code, number, tree or dot")->check(CLI::IsMember({"code", "number", "tree", "dot"}));
  addBounds(prove, o);
  prove->callback([&] {
    action = [&] {
      auto r = psi(readSequent(file), o.fuel);
      switch (r.status) {
        case PsiStatus::Code:
          emitCode(out, r.code, o.emit, o.bounds());
          return int(kExitOk);
        case PsiStatus::DeadEnd:
          out << "DEADEND PATH " << pathText(r.deadEnd) << "\n";
          return int(kExitRefuted);
        case PsiStatus::Diverged:
          out << "DIVERGED FUEL " << o.fuel << "\n";
          return int(kExitExhausted);
      }
      return int(kExitUsage);
    };
  });

  auto* check = app.add_subcommand("check", "Bounded membership check of a code");
  check->add_option("file", file, "Code file")->required();
  check->add_option("--system", system, "rec, prec, rec- or prec-")->check(CLI::IsMember({"rec", "prec", "rec-", "prec-"}));
  check->add_option("--fuel", o.fuel, "Evaluation fuel per call");
  addBounds(check, o);
  check->callback([&] {
    action = [&] {
      auto v = checkMembership(readCode(file), *systemFromName(system), o.bounds());
      out << v.line() << "\n";
      return verdictStatus(v);
    };
  });

  auto* transform = app.add_subcommand("transform", "Apply a transformation");
  transform->add_option("op", op, "weak, weak-strict, code2idx, idx2code, idx2code-cut, rec2prec or pi2")
      ->required()
      ->check(CLI::IsMember({"weak", "weak-strict", "code2idx", "idx2code", "idx2code-cut", "rec2prec", "pi2"}));
  transform->add_option("file", file, "Code file; index file for idx2code*, sentence file for pi2")->required();
  transform->add_option("--delta", delta, "Sequent added by weak");
  transform->add_option("--witness", witness, "pi2: witness index (decimal, program or file)");
  transform->add_option("--fuel", o.fuel, "Evaluation fuel");
  transform->add_option("--emit", o.emit, "code, number, tree or dot")->check(CLI::IsMember({"code", "number", "tree", "dot"}));
  addBounds(transform, o);
  transform->callback([&] {
    action = [&] {
      std::optional<Natural> r;
      if (op == "weak" || op == "weak-strict") {
        Sequent d = delta.empty() ? Sequent{} : Sequent::parse(delta);
        r = op == "weak" ? weakSimple(readCode(file), d) : weakStrict(readCode(file), d);
      } else if (op == "code2idx") {
        out << toDecimal(codeToIndex(readCode(file))) << "\n";
        return int(kExitOk);
      } else if (op == "idx2code") {
        r = indexToCodeExact(readIndex(readFile(file)), o.fuel);
      } else if (op == "idx2code-cut") {
        r = indexToCodeCut(readIndex(readFile(file)), o.fuel);
      } else if (op == "rec2prec") {
        r = recToPrec(readCode(file));
      } else {
        if (witness.empty()) throw UsageError("pi2 needs --witness");
        auto s = readSequent(file);
        if (s.size() != 1) throw UsageError("pi2 needs a single sentence");
        const Formula& f = s.members()[0];
        r = pi2Code(f, readIndexArg(witness), pi2AxiomLeaves(f));
      }
      if (!r) {
        out << "DIVERGED FUEL " << o.fuel << "\n";
        return int(kExitExhausted);
      }
      emitCode(out, *r, o.emit, o.bounds());
      return int(kExitOk);
    };
  });

  auto* oreduce = app.add_subcommand("oreduce", "Code of forall x (x = x) built from a notation");
  oreduce->add_option("notation", notation, "1, 2^X, 3*5^N, a number or (lim NAME)")->required();
  oreduce->add_flag("--cut", cut, "Cut-ended variant");
  oreduce->add_option("--sentence", sentence, "--cut: file with the true sentence A (default forall x (x = x))");
  oreduce->add_option("--fuel", o.fuel, "Fuel for the proof of A");
  oreduce->add_option("--emit", o.emit, "code, number, tree or dot")->check(CLI::IsMember({"code", "number", "tree", "dot"}));
  addBounds(oreduce, o);
  oreduce->callback([&] {
    action = [&] {
      ONotation a = readNotation(notation);
      Natural r;
      if (cut) {
        Formula f = reflAll();
        if (!sentence.empty()) {
          auto s = readSequent(sentence);
          if (s.size() != 1) throw UsageError("--sentence needs a single sentence");
          f = s.members()[0];
        }
        auto base = psi(Sequent{f}, o.fuel);
        if (base.status != PsiStatus::Code) {
          out << "NOPROOF " << f.str() << "\n";
          return base.status == PsiStatus::Diverged ? int(kExitExhausted) : int(kExitRefuted);
        }
        r = oToCodeCut(a, f, base.code);
      } else {
        r = oToCode(a);
      }
      emitCode(out, r, o.emit, o.bounds());
      return int(kExitOk);
    };
  });

  auto* ocheck = app.add_subcommand("ocheck", "Bounded check of a notation");
  ocheck->add_option("notation", notation, "1, 2^X, 3*5^N, a number or (lim NAME)")->required();
  ocheck->add_option("--fuel", o.fuel, "Evaluation fuel");
  addBounds(ocheck, o);
  ocheck->callback([&] {
    action = [&] {
      auto v = checkO(readNotation(notation), o.bounds());
      out << v.line() << "\n";
      return verdictStatus(v);
    };
  });

  auto* path = app.add_subcommand("path", "Nodes along a branch");
  path->add_option("file", file, "Code file")->required();
  path->add_option("--choices", choices, "Comma separated premise choices");
  path->add_option("--fuel", o.fuel, "Evaluation fuel");
  path->callback([&] {
    action = [&] {
      auto ch = parseChoices(choices);
      auto nodes = pathWalk(readCode(file), ch, o.fuel);
      Path p;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        out << pathText(p) << " " << nodeLine(nodes[i]) << "\n";
        if (i < ch.size()) p.push_back(Natural(static_cast<unsigned long>(ch[i])));
      }
      return nodes.size() == ch.size() + 1 ? int(kExitOk) : int(kExitRefuted);
    };
  });

  auto* dump = app.add_subcommand("dump", "Print a code");
  dump->add_option("file", file, "Code file")->required();
  dump->add_option("--emit", o.emit, "code, number, tree or dot")->check(CLI::IsMember({"code", "number", "tree", "dot"}));
  dump->add_option("--fuel", o.fuel, "Evaluation fuel");
  addBounds(dump, o);
  dump->callback([&] {
    action = [&] {
      emitCode(out, readCode(file), o.emit, o.bounds());
      return int(kExitOk);
    };
  });

  auto* disasm = app.add_subcommand("disasm", "Print the program of an index");
  std::string index;
  disasm->add_option("index", index, "Decimal index or a file holding one")->required();
  disasm->callback([&] {
    action = [&] {
      out << decodeProgram(readIndexArg(index))->str() << "\n";
      return int(kExitOk);
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  try {
    return action ? action() : int(kExitUsage);
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const TransformError& e) {
    err << "rejected: " << e.what() << "\n";
    return kExitRefuted;
  } catch (const std::exception& e) {
    err << "malformed input: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace omega
