#pragma once

// Seeded single-field corruptions of a certificate. Every mutation touches
// exactly one field and is constructed so that a sound verifier must reject
// the result; the label names the field for failure reports.

#include <bit>
#include <random>
#include <string>

#include "cat0/engine.hpp"

namespace cat0::testing {

struct Mutation {
  std::string label;
  Certificate cert;
};

inline Mutation mutate_certificate(const Certificate& base, std::mt19937& rng) {
  auto pick = [&rng](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  int curve_count = 3 * base.context.genus - 1;

  for (;;) {
    Mutation out{"", base};
    Certificate& c = out.cert;
    switch (pick(20)) {
      case 0:
        c.context.genus += 1;
        out.label = "context.g";
        return out;
      case 1:
        c.context.dim += 1;
        out.label = "context.d";
        return out;
      case 2:
        c.context.hypothesis += "-x";
        out.label = "context.hypothesis";
        return out;
      case 3:
        c.conclusion += "!";
        out.label = "conclusion";
        return out;
      case 4:
        c.version = 2;
        out.label = "v";
        return out;
      case 5: {
        FixFact& f = c.facts[pick(c.facts.size())];
        f.id += 1;
        out.label = "fact.id";
        return out;
      }
      case 6: {
        FixFact& f = c.facts[pick(c.facts.size())];
        f.subset &= f.subset - 1;  // drop the lowest curve
        out.label = "fact.subset drop";
        return out;
      }
      case 7: {
        FixFact& f = c.facts[pick(c.facts.size())];
        CurveMask full = (CurveMask(1) << curve_count) - 1;
        CurveMask free = full & ~f.subset;
        if (!free) break;  // the closure fact covers everything; resample
        f.subset |= free & (~free + 1);
        out.label = "fact.subset add";
        return out;
      }
      case 8: {
        FixFact& f = c.facts[pick(c.facts.size())];
        f.rule = static_cast<RuleTag>((static_cast<int>(f.rule) + 1) % 5);
        out.label = "fact.rule";
        return out;
      }
      case 9: {
        FixFact& f = c.facts[pick(c.facts.size())];
        if (f.premises.empty()) break;
        f.premises[pick(f.premises.size())] += 1;
        out.label = "fact.premises bump";
        return out;
      }
      case 10: {
        FixFact& f = c.facts[pick(c.facts.size())];
        if (f.premises.empty()) break;
        f.premises.pop_back();
        out.label = "fact.premises drop";
        return out;
      }
      case 11: {
        FixFact& f = c.facts[pick(c.facts.size())];
        if (f.rule != RuleTag::ConjBootstrap && f.rule != RuleTag::HellyFinish) break;
        f.side.k += 1;
        out.label = "side.k";
        return out;
      }
      case 12: {
        FixFact& f = c.facts[pick(c.facts.size())];
        if (f.rule != RuleTag::ConjBootstrap) break;
        f.side.n += 1;
        out.label = "side.n";
        return out;
      }
      case 13: {
        FixFact& f = c.facts[pick(c.facts.size())];
        if (f.rule != RuleTag::ConjBootstrap) break;
        f.side.dim_bound += 1;
        out.label = "side.dim_bound";
        return out;
      }
      case 14: {
        FixFact& f = c.facts[pick(c.facts.size())];
        if (f.rule != RuleTag::HellyFinish) break;
        f.side.subset_count += 1;
        out.label = "side.subset_count";
        return out;
      }
      case 15: {
        FixFact& f = c.facts[pick(c.facts.size())];
        if (!f.copies) break;
        if (pick(2) == 0) {
          f.copies->type.genus += 1;
          out.label = "witness.type.genus";
        } else {
          f.copies->type.boundary += 1;
          out.label = "witness.type.boundary";
        }
        return out;
      }
      case 16: {
        FixFact& f = c.facts[pick(c.facts.size())];
        if (!f.copies || f.copies->blocks.size() < 2) break;
        f.copies->blocks[1][0] = f.copies->blocks[0][0];  // force an overlap
        out.label = "witness.blocks overlap";
        return out;
      }
      case 17: {
        FixFact& f = c.facts[pick(c.facts.size())];
        if (!f.copies) break;
        f.copies->blocks.pop_back();
        out.label = "witness.blocks drop";
        return out;
      }
      case 18: {
        FixFact& f = c.facts[pick(c.facts.size())];
        if (!f.copies || f.copies->strips.empty()) break;
        f.copies->strips[pick(f.copies->strips.size())].circle += 1000;
        out.label = "witness.strips circle";
        return out;
      }
      case 19: {
        FixFact& f = c.facts[pick(c.facts.size())];
        if (!f.split) break;
        std::swap(f.split->component, f.split->rest);
        out.label = "witness.split swap";
        return out;
      }
    }
  }
}

}  // namespace cat0::testing
