#include "omega/eval.hpp"

#include <algorithm>

#include "omega/ops.hpp"

namespace omega {

namespace {

struct OutOfFuel {};
struct EvalFault {
  std::string kind;
};

struct DepthGuard {
  explicit DepthGuard(std::uint32_t& d) : depth(d) {
    if (++depth > Evaluator::kMaxDepth) {
      --depth;
      throw OutOfFuel{};
    }
  }
  ~DepthGuard() { --depth; }
  std::uint32_t& depth;
};

}  // namespace

void Evaluator::charge(std::uint64_t units) {
  if (units > fuel_ - used_) {
    used_ = fuel_;
    throw OutOfFuel{};
  }
  used_ += units;
}

EvalResult Evaluator::run(const ProgramPtr& p, std::span<const Natural> args) {
  EvalResult r;
  if (args.size() != p->arity) {
    r.status = EvalStatus::Error;
    r.error = "ArityMismatch";
    return r;
  }
  try {
    r.value = eval(*p, args, nullptr);
    r.status = EvalStatus::Value;
  } catch (const OutOfFuel&) {
    r.status = EvalStatus::Diverged;
  } catch (const EvalFault& f) {
    r.status = EvalStatus::Error;
    r.error = f.kind;
  }
  r.steps = used_;
  return r;
}

std::vector<Natural> Evaluator::evalArgs(const Program& p, std::size_t from, std::span<const Natural> env,
                                         const Frame* frame) {
  std::vector<Natural> out;
  out.reserve(p.kids.size() - from);
  for (std::size_t i = from; i < p.kids.size(); ++i) out.push_back(eval(*p.kids[i], env, frame));
  return out;
}

Natural Evaluator::call(const Program& target, std::vector<Natural> args) {
  if (args.size() != target.arity) throw EvalFault{"ArityMismatch"};
  DepthGuard guard(depth_);
  return eval(target, args, nullptr);
}

Natural Evaluator::eval(const Program& p, std::span<const Natural> env, const Frame* frame) {
  charge(1);
  switch (p.kind) {
    case ProgKind::Zero:
      return 0;
    case ProgKind::Succ:
      return env[0] + 1;
    case ProgKind::Proj:
      return env[p.index];
    case ProgKind::Const:
      return p.value;
    case ProgKind::Comp: {
      auto inner = evalArgs(p, 1, env, frame);
      return eval(*p.kids[0], inner, frame);
    }
    case ProgKind::PrimRec: {
      const Natural& y = env[0];
      std::vector<Natural> rest(env.begin() + 1, env.end());
      Natural acc = eval(*p.kids[0], rest, frame);
      std::vector<Natural> stepEnv;
      stepEnv.reserve(env.size() + 1);
      for (Natural i = 0; i < y; ++i) {
        stepEnv.clear();
        stepEnv.push_back(i);
        stepEnv.push_back(std::move(acc));
        stepEnv.insert(stepEnv.end(), rest.begin(), rest.end());
        acc = eval(*p.kids[1], stepEnv, frame);
      }
      return acc;
    }
    case ProgKind::Mu: {
      std::vector<Natural> muEnv;
      muEnv.reserve(env.size() + 1);
      for (Natural z = 0;; ++z) {
        muEnv.clear();
        muEnv.push_back(z);
        muEnv.insert(muEnv.end(), env.begin(), env.end());
        if (eval(*p.kids[0], muEnv, frame) == 0) return z;
      }
    }
    case ProgKind::ApplyLit: {
      auto target = decodeProgram(p.value);
      return call(*target, evalArgs(p, 0, env, frame));
    }
    case ProgKind::App: {
      Natural idx = eval(*p.kids[0], env, frame);
      ProgramPtr target;
      try {
        target = decodeProgram(idx);
      } catch (const MalformedCode&) {
        throw EvalFault{"MalformedCode"};
      }
      return call(*target, evalArgs(p, 1, env, frame));
    }
    case ProgKind::CVRec: {
      Frame f{&p, std::vector<Natural>(env.begin(), env.end())};
      return eval(*p.kids[0], env, &f);
    }
    case ProgKind::CVSelf: {
      if (!frame) throw EvalFault{"GuardViolation"};
      auto args = evalArgs(p, 0, env, frame);
      if (!(args[0] < frame->args[0])) throw EvalFault{"GuardViolation"};
      DepthGuard guard(depth_);
      Frame f{frame->rec, std::move(args)};
      return eval(*frame->rec->kids[0], f.args, &f);
    }
    case ProgKind::Op: {
      auto args = evalArgs(p, 0, env, frame);
      std::uint64_t bits = 0;
      for (const auto& a : args) bits += bitLength(a);
      charge(bits / kBitsPerUnit);
      auto r = runOp(p.index, args, *this);
      if (!r) throw OutOfFuel{};
      charge(bitLength(*r) / kBitsPerUnit);
      return std::move(*r);
    }
    case ProgKind::Case: {
      Natural s = eval(*p.kids[0], env, frame);
      const std::size_t branches = p.kids.size() - 1;
      std::size_t pick = branches - 1;
      if (s < branches) pick = s.get_ui();
      return eval(*p.kids[1 + pick], env, frame);
    }
  }
  throw EvalFault{"MalformedCode"};
}

EvalResult evalIndex(const Natural& index, std::span<const Natural> args, std::uint64_t fuel) {
  ProgramPtr p;
  try {
    p = decodeProgram(index);
  } catch (const MalformedCode&) {
    EvalResult r;
    r.status = EvalStatus::Error;
    r.error = "MalformedCode";
    return r;
  }
  Evaluator ev(fuel);
  return ev.run(p, args);
}

EvalResult evalIndex(const Natural& index, std::initializer_list<Natural> args, std::uint64_t fuel) {
  return evalIndex(index, std::span<const Natural>(args.begin(), args.size()), fuel);
}

bool kleeneT(const Natural& index, std::span<const Natural> args, std::uint64_t z) {
  return evalIndex(index, args, z).ok();
}

std::optional<Natural> extractU(const Natural& index, std::span<const Natural> args, std::uint64_t z) {
  auto r = evalIndex(index, args, z);
  if (!r.ok()) return std::nullopt;
  return r.value;
}

std::optional<std::uint64_t> haltingSteps(const Natural& index, std::span<const Natural> args, std::uint64_t limit) {
  auto r = evalIndex(index, args, limit);
  if (!r.ok()) return std::nullopt;
  return r.steps;
}

}  // namespace omega
