#include "entail/bench.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <stdexcept>

#include "entail/optimizer.hpp"

namespace entail {

BenchFamily parse_family(std::string name, int& frame_size) {
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  auto strip = [&](const std::string& prefix) {
    if (name.rfind(prefix, 0) != 0) return false;
    std::string rest = name.substr(prefix.size());
    if (!rest.empty() && rest[0] == '-') rest = rest.substr(1);
    if (rest.empty())
      frame_size = 2;
    else if (rest == "2" || rest == "3")
      frame_size = rest[0] - '0';
    else
      throw std::invalid_argument("frame size must be 2 or 3");
    return true;
  };
  if (name == "base") return BenchFamily::Base;
  if (name == "multi") return BenchFamily::Multi;
  if (strip("singlenframe")) return BenchFamily::SingleNFrame;
  if (strip("singleframe")) return BenchFamily::SingleFrame;
  throw std::invalid_argument("unknown bench family: " + name);
}

namespace {

enum Group { Pto = 0, Array = 1, Mix = 2 };

const char* group_name(int g) {
  switch (g) {
    case Pto: return "pto";
    case Array: return "arr";
    default: return "mix";
  }
}

struct Gen {
  std::mt19937_64 rng;

  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::uint64_t pick(std::uint64_t n) { return rng() % n; }
  bool flip() { return pick(2) == 0; }
  long long val() { return static_cast<long long>(pick(6)); }  // 0..5

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[pick(i)]);
  }

  static SymbolicHeap heap_of(std::vector<SpatialAtom> atoms) {
    SymbolicHeap h;
    h.spatial.atoms = std::move(atoms);
    return h;
  }

  // --- points-to group -----------------------------------------------
  // Valid: a permutation of the antecedent, sometimes with one value
  // covered by a binder. Invalid: one value perturbed.
  Entailment pto_instance(bool valid) {
    std::size_t k = 2 + pick(2);  // 2..3 atoms
    static const char* pool[] = {"x", "y", "z"};
    bool ground = flip();
    std::vector<SpatialAtom> ante;
    for (std::size_t i = 0; i < k; ++i) {
      Term addr = ground ? Term(1 + 2 * static_cast<long long>(i))
                         : Term::var(pool[i]);
      ante.push_back(SpatialAtom::points_to(addr, Term(val())));
    }

    std::vector<SpatialAtom> succ = ante;
    shuffle(succ);

    Entailment e;
    e.antecedent = heap_of(ante);
    SymbolicHeap s = heap_of(succ);
    std::size_t j = pick(k);
    if (valid) {
      if (pick(3) == 0) {
        s.spatial.atoms[j].snd = Term::var("_y0");
        s.ex_vars.push_back("_y0");
      }
    } else {
      long long old = s.spatial.atoms[j].snd.constant();
      s.spatial.atoms[j].snd = Term(old == 5 ? 0 : old + 1);
    }
    e.succedents.push_back(std::move(s));
    return e;
  }

  // --- array group ----------------------------------------------------
  // A single array (sometimes plus a shared one-cell array on a variable
  // base) against exact or perturbed coverings.
  Entailment arr_instance(bool valid) {
    bool ground = flip();
    Term base = ground ? Term(1 + static_cast<long long>(pick(2)))
                       : Term::var("x");
    long long len = 1 + static_cast<long long>(pick(3));  // 2..4 cells
    SpatialAtom whole = SpatialAtom::arr(base, base.plus_const(len));
    bool extra = !ground && flip();  // shared Arr(5,5) on both sides

    Entailment e;
    e.antecedent = heap_of({whole});
    SymbolicHeap s;
    switch (pick(3)) {
      case 0: {
        // identity, or a shrunk array
        s = valid ? heap_of({whole})
                  : heap_of({SpatialAtom::arr(base, base.plus_const(len - 1))});
        break;
      }
      case 1: {
        long long j =
            static_cast<long long>(pick(static_cast<std::uint64_t>(len)));
        if (valid) {
          // exact split at offset j
          s = heap_of({SpatialAtom::arr(base, base.plus_const(j)),
                       SpatialAtom::arr(base.plus_const(j + 1),
                                        base.plus_const(len))});
          if (flip()) std::swap(s.spatial.atoms[0], s.spatial.atoms[1]);
        } else if (j + 2 <= len) {
          // one-cell gap
          s = heap_of({SpatialAtom::arr(base, base.plus_const(j)),
                       SpatialAtom::arr(base.plus_const(j + 2),
                                        base.plus_const(len))});
        } else {
          s = heap_of({SpatialAtom::arr(base, base.plus_const(len - 1))});
        }
        break;
      }
      default: {
        if (valid) {
          // existential split with constant sizes
          long long a =
              static_cast<long long>(pick(static_cast<std::uint64_t>(len)));
          long long b = len - 1 - a;
          s.ex_vars = {"_y0", "_y1"};
          s.spatial.atoms = {
              SpatialAtom::arr(Term::var("_y0"), Term::var("_y0").plus_const(a)),
              SpatialAtom::arr(Term::var("_y1"),
                               Term::var("_y1").plus_const(b))};
        } else if (len >= 2) {
          // existential split one cell short
          s.ex_vars = {"_y0", "_y1"};
          s.spatial.atoms = {
              SpatialAtom::arr(Term::var("_y0"), Term::var("_y0")),
              SpatialAtom::arr(Term::var("_y1"),
                               Term::var("_y1").plus_const(len - 2))};
        } else {
          s = heap_of({SpatialAtom::arr(base, base.plus_const(len - 1))});
        }
        break;
      }
    }
    if (extra) {
      SpatialAtom shared = SpatialAtom::arr(Term(5), Term(5));
      e.antecedent.spatial.atoms.push_back(shared);
      s.spatial.atoms.push_back(shared);
    }
    e.succedents.push_back(std::move(s));
    return e;
  }

  // --- mixed group ----------------------------------------------------
  Entailment mix_instance(bool valid) {
    Term pa = Term::var("x");
    Term pv = Term(val());
    Term ab = Term::var("y");
    long long len = static_cast<long long>(pick(2));  // 1..2 cells
    SpatialAtom pto = SpatialAtom::points_to(pa, pv);
    SpatialAtom arr = SpatialAtom::arr(ab, ab.plus_const(len));

    Entailment e;
    e.antecedent = heap_of({pto, arr});
    if (flip())
      std::swap(e.antecedent.spatial.atoms[0], e.antecedent.spatial.atoms[1]);

    SymbolicHeap s;
    switch (pick(3)) {
      case 0: {
        // permutation identity; invalid perturbs the points-to value
        s = e.antecedent;
        if (flip()) std::swap(s.spatial.atoms[0], s.spatial.atoms[1]);
        if (!valid)
          for (auto& a : s.spatial.atoms)
            if (a.kind == SpatialAtom::Kind::PointsTo) {
              long long old = a.snd.constant();
              a.snd = Term(old == 5 ? 0 : old + 1);
            }
        break;
      }
      case 1: {
        if (valid) {
          // weaken the points-to into a one-cell array
          s = heap_of({SpatialAtom::arr(pa, pa), arr});
        } else {
          // claim a specific value for an array cell
          std::vector<SpatialAtom> atoms{pto,
                                         SpatialAtom::points_to(ab, Term(val()))};
          if (len >= 1)
            atoms.push_back(
                SpatialAtom::arr(ab.plus_const(1), ab.plus_const(len)));
          s = heap_of(std::move(atoms));
        }
        break;
      }
      default: {
        s = e.antecedent;
        if (valid) {
          // existential cover of the points-to value
          s.ex_vars = {"_y0"};
          for (auto& a : s.spatial.atoms)
            if (a.kind == SpatialAtom::Kind::PointsTo)
              a.snd = Term::var("_y0");
        } else {
          // enlarge the array by one cell
          for (auto& a : s.spatial.atoms)
            if (a.kind == SpatialAtom::Kind::Arr)
              a.snd = a.snd.plus_const(1);
        }
        break;
      }
    }
    e.succedents.push_back(std::move(s));
    return e;
  }

  Entailment base_instance(int group, bool valid) {
    switch (group) {
      case Pto: return pto_instance(valid);
      case Array: return arr_instance(valid);
      default: return mix_instance(valid);
    }
  }

  // Frame atoms at ground addresses clear of the base instances, so the
  // frame neither overlaps base cells nor flips labels.
  std::vector<SpatialAtom> frame_atoms(int group, int n) {
    std::vector<SpatialAtom> out;
    long long a = 50;
    for (int i = 0; i < n; ++i) {
      bool use_pto = group == Pto || (group == Mix && flip());
      if (use_pto) {
        out.push_back(SpatialAtom::points_to(Term(a), Term(val())));
        a += 2;
      } else {
        long long len = static_cast<long long>(pick(2));
        out.push_back(SpatialAtom::arr(Term(a), Term(a + len)));
        a += len + 2;
      }
    }
    return out;
  }

  static void append_atoms(SymbolicHeap& h,
                           const std::vector<SpatialAtom>& atoms) {
    h.spatial.atoms.insert(h.spatial.atoms.end(), atoms.begin(), atoms.end());
  }

  Entailment with_frame(Entailment e, const std::vector<SpatialAtom>& frame) {
    append_atoms(e.antecedent, frame);
    for (auto& s : e.succedents) append_atoms(s, frame);
    return e;
  }

  // Different length-n extensions per side covering the same ground cells
  // and sharing no atom; the right side uses arrays so its cell values stay
  // unconstrained and the base label carries over.
  Entailment with_nframe(Entailment e, int group, int n) {
    const long long lo = 50;
    std::vector<SpatialAtom> left, right;
    if (group == Pto || (group == Mix && flip())) {
      for (int i = 0; i < n; ++i)
        left.push_back(SpatialAtom::points_to(Term(lo + i), Term(val())));
      for (int i = 0; i < n; ++i)
        right.push_back(SpatialAtom::arr(Term(lo + i), Term(lo + i)));
    } else {
      // two different splits of n+1 cells into n arrays
      const long long cells = n + 1;
      left.push_back(SpatialAtom::arr(Term(lo), Term(lo)));
      long long at = lo + 1;
      for (int i = 1; i < n; ++i) {
        long long len = (i == n - 1) ? (lo + cells - 1 - at) : 0;
        left.push_back(SpatialAtom::arr(Term(at), Term(at + len)));
        at += len + 1;
      }
      right.push_back(SpatialAtom::arr(Term(lo), Term(lo + 1)));
      at = lo + 2;
      for (int i = 1; i < n; ++i) {
        right.push_back(SpatialAtom::arr(Term(at), Term(at)));
        at += 1;
      }
    }
    append_atoms(e.antecedent, left);
    for (auto& s : e.succedents) append_atoms(s, right);
    return e;
  }

  // Extra succedents that can never hold jointly with the antecedent: a
  // contradictory pure part, a wrong total size, or an oversized array.
  SymbolicHeap junk_succedent(const Entailment& e) {
    switch (pick(3)) {
      case 0: {
        SymbolicHeap s;
        s.pure = Pure::mk_atom(Rel::Lt, Term(2), Term(1));
        s.spatial = e.antecedent.spatial;
        return s;
      }
      case 1:
        return heap_of({SpatialAtom::points_to(
            Term(1 + static_cast<long long>(pick(3))), Term(val()))});
      default: {
        // array whose cell count differs from the (constant) antecedent size
        long long cells = size_term(e.antecedent.spatial).constant();
        long long hi = cells + 1 <= 5 ? cells + 1 : 1;
        return heap_of({SpatialAtom::arr(Term(1), Term(hi))});
      }
    }
  }
};

bool label_valid(std::size_t k, double ratio) {
  double lo = std::floor(static_cast<double>(k) * ratio);
  double hi = std::floor(static_cast<double>(k + 1) * ratio);
  return hi > lo;
}

}  // namespace

InputFile generate_bench(const BenchSpec& spec) {
  Gen gen(spec.seed);
  InputFile file;
  const char* prefix = spec.family == BenchFamily::Base    ? "base"
                       : spec.family == BenchFamily::Multi ? "multi"
                       : spec.family == BenchFamily::SingleFrame ? "frame"
                                                                 : "nframe";

  for (std::size_t i = 0; i < spec.count; ++i) {
    int group = static_cast<int>(i % 3);
    bool valid = label_valid(i / 3, spec.valid_ratio);
    Entailment e = gen.base_instance(group, valid);

    switch (spec.family) {
      case BenchFamily::Base: break;
      case BenchFamily::SingleFrame:
        e = gen.with_frame(std::move(e),
                           gen.frame_atoms(group, spec.frame_size));
        break;
      case BenchFamily::SingleNFrame:
        e = gen.with_nframe(std::move(e), group, spec.frame_size);
        break;
      case BenchFamily::Multi: {
        std::size_t extras = 1 + gen.pick(2);
        for (std::size_t j = 0; j < extras; ++j)
          e.succedents.push_back(gen.junk_succedent(e));
        break;
      }
    }

    std::string name = std::string(prefix) + "_" + group_name(group) + "_" +
                       (valid ? "v" : "i") + std::to_string(i);
    file.entries.emplace_back(std::move(name), std::move(e));
  }
  return file;
}

}  // namespace entail
