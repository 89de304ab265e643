#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cat0/engine.hpp"
#include "cat0/exact.hpp"

namespace cat0 {

namespace {

void append_int_array(std::string& out, const std::vector<int>& v) {
  out += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  out += ']';
}

std::vector<int> mask_to_indices(CurveMask mask) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (mask >> i & 1) out.push_back(i);
  return out;
}

}  // namespace

void save_certificate(const Certificate& cert, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open " + path + " for writing");

  std::string buf;
  buf.reserve(1 << 20);
  buf += "{\"v\":";
  buf += std::to_string(cert.version);
  buf += ",\"context\":{\"g\":";
  buf += std::to_string(cert.context.genus);
  buf += ",\"d\":";
  buf += std::to_string(cert.context.dim);
  buf += ",\"hypothesis\":\"";
  buf += cert.context.hypothesis;  // canonical tag, no escapes needed
  buf += "\"},\"facts\":[";

  for (std::size_t i = 0; i < cert.facts.size(); ++i) {
    const FixFact& f = cert.facts[i];
    if (i) buf += ',';
    buf += "{\"id\":";
    buf += std::to_string(f.id);
    buf += ",\"subset\":";
    append_int_array(buf, mask_to_indices(f.subset));
    buf += ",\"rule\":\"";
    buf += rule_tag_name(f.rule);
    buf += "\",\"premises\":[";
    for (std::size_t p = 0; p < f.premises.size(); ++p) {
      if (p) buf += ',';
      buf += std::to_string(f.premises[p]);
    }
    buf += "],\"side_conditions\":{";
    switch (f.rule) {
      case RuleTag::ConjBootstrap:
        buf += "\"k\":";
        buf += std::to_string(f.side.k);
        buf += ",\"n\":";
        buf += std::to_string(f.side.n);
        buf += ",\"dim_bound\":";
        buf += std::to_string(f.side.dim_bound);
        break;
      case RuleTag::Bootstrap:
        buf += "\"k\":";
        buf += std::to_string(f.side.k);
        break;
      case RuleTag::HellyFinish:
        buf += "\"k\":";
        buf += std::to_string(f.side.k);
        buf += ",\"subset_count\":";
        buf += std::to_string(f.side.subset_count);
        break;
      default: break;
    }
    buf += '}';
    if (f.split) {
      buf += ",\"witness\":{\"component\":";
      append_int_array(buf, f.split->component);
      buf += ",\"rest\":";
      append_int_array(buf, f.split->rest);
      buf += '}';
    } else if (f.copies) {
      buf += ",\"witness\":{\"type\":{\"genus\":";
      buf += std::to_string(f.copies->type.genus);
      buf += ",\"boundary\":";
      buf += std::to_string(f.copies->type.boundary);
      buf += "},\"blocks\":[";
      for (std::size_t b = 0; b < f.copies->blocks.size(); ++b) {
        if (b) buf += ',';
        append_int_array(buf, f.copies->blocks[b]);
      }
      buf += "],\"strips\":[";
      for (std::size_t s = 0; s < f.copies->strips.size(); ++s) {
        const StripMove& mv = f.copies->strips[s];
        if (s) buf += ',';
        buf += "{\"copy\":";
        buf += std::to_string(mv.copy);
        buf += ",\"circle\":";
        buf += std::to_string(mv.circle);
        buf += ",\"nonseparating\":";
        buf += mv.nonseparating ? "true" : "false";
        buf += ",\"genus_left\":";
        buf += std::to_string(mv.genus_left);
        buf += ",\"left_circles\":";
        append_int_array(buf, mv.left_circles);
        buf += '}';
      }
      buf += "]}";
    }
    buf += '}';
    if (buf.size() > (1 << 20) - (1 << 12)) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }

  buf += "],\"conclusion\":\"";
  buf += cert.conclusion;
  buf += "\"}";
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw InvalidInput("write to " + path + " failed");
}

namespace {

// Strict streaming reader: every key and nesting level is whitelisted, and
// facts are materialized one at a time.
struct CertificateSax {
  enum class Where {
    Top,      // before the root object
    Root,
    Context,
    Facts,
    Fact,
    Subset,
    Premises,
    Side,
    Witness,
    WitnessComponent,
    WitnessRest,
    WType,
    Blocks,
    Block,
    Strips,
    Strip,
    LeftCircles
  };

  Certificate cert;
  std::vector<Where> stack{Where::Top};
  std::string key;

  FixFact fact;
  std::vector<int> subset_indices;
  // Witness fields are collected before the rule is necessarily known; the
  // fact finalizer decides between the partition and copies shapes.
  bool saw_witness = false;
  bool saw_split_part = false, saw_copies_part = false;
  SplitWitness split;
  CopiesWitness copies;
  std::vector<int> block;
  StripMove strip;

  [[noreturn]] void bail(const std::string& msg) { throw InvalidInput("certificate: " + msg); }

  Where top() const { return stack.back(); }

  void reset_fact() {
    fact = FixFact{};
    subset_indices.clear();
    saw_witness = saw_split_part = saw_copies_part = false;
    split = SplitWitness{};
    copies = CopiesWitness{};
    block.clear();
    strip = StripMove{};
  }

  bool null() { bail("unexpected null"); }

  bool boolean(bool v) {
    if (top() == Where::Strip && key == "nonseparating") {
      strip.nonseparating = v;
      return true;
    }
    bail("unexpected boolean for key '" + key + "'");
  }

  bool integer(long long v) {
    switch (top()) {
      case Where::Root:
        if (key == "v") {
          cert.version = static_cast<int>(v);
          return true;
        }
        break;
      case Where::Context:
        if (key == "g") {
          cert.context.genus = static_cast<int>(v);
          return true;
        }
        if (key == "d") {
          cert.context.dim = static_cast<int>(v);
          return true;
        }
        break;
      case Where::Fact:
        if (key == "id") {
          if (v < 0) bail("negative fact id");
          fact.id = static_cast<std::uint32_t>(v);
          return true;
        }
        break;
      case Where::Subset:
        subset_indices.push_back(static_cast<int>(v));
        return true;
      case Where::Premises:
        if (v < 0) bail("negative premise id");
        fact.premises.push_back(static_cast<std::uint32_t>(v));
        return true;
      case Where::Side:
        if (key == "k") {
          fact.side.k = v;
          return true;
        }
        if (key == "n") {
          fact.side.n = v;
          return true;
        }
        if (key == "dim_bound") {
          fact.side.dim_bound = v;
          return true;
        }
        if (key == "subset_count") {
          fact.side.subset_count = v;
          return true;
        }
        break;
      case Where::WitnessComponent:
        split.component.push_back(static_cast<int>(v));
        return true;
      case Where::WitnessRest:
        split.rest.push_back(static_cast<int>(v));
        return true;
      case Where::WType:
        if (key == "genus") {
          copies.type.genus = static_cast<int>(v);
          return true;
        }
        if (key == "boundary") {
          copies.type.boundary = static_cast<int>(v);
          return true;
        }
        break;
      case Where::Block:
        block.push_back(static_cast<int>(v));
        return true;
      case Where::Strip:
        if (key == "copy") {
          strip.copy = static_cast<int>(v);
          return true;
        }
        if (key == "circle") {
          strip.circle = static_cast<int>(v);
          return true;
        }
        if (key == "genus_left") {
          strip.genus_left = static_cast<int>(v);
          return true;
        }
        break;
      case Where::LeftCircles:
        strip.left_circles.push_back(static_cast<int>(v));
        return true;
      default: break;
    }
    bail("unexpected number for key '" + key + "'");
  }

  bool number_integer(std::int64_t v) { return integer(v); }
  bool number_unsigned(std::uint64_t v) {
    if (v > static_cast<std::uint64_t>(INT64_MAX)) bail("integer out of range");
    return integer(static_cast<long long>(v));
  }
  bool number_float(double, const std::string&) { bail("unexpected fractional number"); }

  bool string(std::string& v) {
    switch (top()) {
      case Where::Root:
        if (key == "conclusion") {
          cert.conclusion = v;
          return true;
        }
        break;
      case Where::Context:
        if (key == "hypothesis") {
          cert.context.hypothesis = v;
          return true;
        }
        break;
      case Where::Fact:
        if (key == "rule") {
          auto tag = rule_tag_from_name(v);
          if (!tag) bail("unknown rule tag '" + v + "'");
          fact.rule = *tag;
          return true;
        }
        break;
      default: break;
    }
    bail("unexpected string for key '" + key + "'");
  }

  bool binary(nlohmann::json::binary_t&) { bail("unexpected binary value"); }

  bool start_object(std::size_t) {
    switch (top()) {
      case Where::Top:
        stack.push_back(Where::Root);
        return true;
      case Where::Root:
        if (key == "context") {
          stack.push_back(Where::Context);
          return true;
        }
        break;
      case Where::Facts:
        reset_fact();
        stack.push_back(Where::Fact);
        return true;
      case Where::Fact:
        if (key == "side_conditions") {
          stack.push_back(Where::Side);
          return true;
        }
        if (key == "witness") {
          saw_witness = true;
          stack.push_back(Where::Witness);
          return true;
        }
        break;
      case Where::Witness:
        if (key == "type") {
          saw_copies_part = true;
          stack.push_back(Where::WType);
          return true;
        }
        break;
      case Where::Strips:
        strip = StripMove{};
        stack.push_back(Where::Strip);
        return true;
      default: break;
    }
    bail("unexpected object for key '" + key + "'");
  }

  bool key_event(std::string& v) {
    key = v;
    switch (top()) {
      case Where::Root:
        if (v == "v" || v == "context" || v == "facts" || v == "conclusion") return true;
        break;
      case Where::Context:
        if (v == "g" || v == "d" || v == "hypothesis") return true;
        break;
      case Where::Fact:
        if (v == "id" || v == "subset" || v == "rule" || v == "premises" ||
            v == "side_conditions" || v == "witness")
          return true;
        break;
      case Where::Side:
        if (v == "k" || v == "n" || v == "dim_bound" || v == "subset_count") return true;
        break;
      case Where::Witness:
        if (v == "component" || v == "rest" || v == "type" || v == "blocks" || v == "strips")
          return true;
        break;
      case Where::WType:
        if (v == "genus" || v == "boundary") return true;
        break;
      case Where::Strip:
        if (v == "copy" || v == "circle" || v == "nonseparating" || v == "genus_left" ||
            v == "left_circles")
          return true;
        break;
      default: break;
    }
    bail("unexpected key '" + v + "'");
  }

  bool end_object() {
    Where w = top();
    stack.pop_back();
    if (w == Where::Strip) copies.strips.push_back(strip);
    if (w == Where::Fact) finalize_fact();
    return true;
  }

  bool start_array(std::size_t) {
    switch (top()) {
      case Where::Root:
        if (key == "facts") {
          stack.push_back(Where::Facts);
          return true;
        }
        break;
      case Where::Fact:
        if (key == "subset") {
          stack.push_back(Where::Subset);
          return true;
        }
        if (key == "premises") {
          stack.push_back(Where::Premises);
          return true;
        }
        break;
      case Where::Witness:
        if (key == "component") {
          saw_split_part = true;
          stack.push_back(Where::WitnessComponent);
          return true;
        }
        if (key == "rest") {
          saw_split_part = true;
          stack.push_back(Where::WitnessRest);
          return true;
        }
        if (key == "blocks") {
          saw_copies_part = true;
          stack.push_back(Where::Blocks);
          return true;
        }
        if (key == "strips") {
          saw_copies_part = true;
          stack.push_back(Where::Strips);
          return true;
        }
        break;
      case Where::Blocks:
        block.clear();
        stack.push_back(Where::Block);
        return true;
      case Where::Strip:
        if (key == "left_circles") {
          stack.push_back(Where::LeftCircles);
          return true;
        }
        break;
      default: break;
    }
    bail("unexpected array for key '" + key + "'");
  }

  bool end_array() {
    Where w = top();
    stack.pop_back();
    if (w == Where::Block) copies.blocks.push_back(block);
    return true;
  }

  void finalize_fact() {
    CurveMask mask = 0;
    int prev = -1;
    for (int idx : subset_indices) {
      if (idx < 0 || idx > 31) bail("curve index " + std::to_string(idx) + " out of range");
      if (idx <= prev) bail("subset indices must be strictly increasing");
      prev = idx;
      mask |= CurveMask(1) << idx;
    }
    fact.subset = mask;
    if (saw_witness) {
      if (saw_split_part && saw_copies_part) bail("witness mixes partition and copies fields");
      if (saw_split_part)
        fact.split = split;
      else if (saw_copies_part)
        fact.copies = copies;
      else
        bail("empty witness object");
    }
    cert.facts.push_back(std::move(fact));
  }
};

// Adapter to nlohmann's SAX interface (kept separate so CertificateSax stays
// readable).
struct SaxAdapter : nlohmann::json_sax<nlohmann::json> {
  CertificateSax inner;
  bool null() override { return inner.null(); }
  bool boolean(bool v) override { return inner.boolean(v); }
  bool number_integer(number_integer_t v) override { return inner.number_integer(v); }
  bool number_unsigned(number_unsigned_t v) override { return inner.number_unsigned(v); }
  bool number_float(number_float_t v, const string_t& s) override {
    return inner.number_float(v, s);
  }
  bool string(string_t& v) override { return inner.string(v); }
  bool binary(binary_t& v) override { return inner.binary(v); }
  bool start_object(std::size_t n) override { return inner.start_object(n); }
  bool key(string_t& v) override { return inner.key_event(v); }
  bool end_object() override { return inner.end_object(); }
  bool start_array(std::size_t n) override { return inner.start_array(n); }
  bool end_array() override { return inner.end_array(); }
  bool parse_error(std::size_t pos, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    throw InvalidInput("certificate: malformed JSON at byte " + std::to_string(pos) + ": " +
                       ex.what());
  }
};

}  // namespace

Certificate load_certificate(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  SaxAdapter sax;
  if (!nlohmann::json::sax_parse(in, &sax))
    throw InvalidInput("certificate: malformed JSON in " + path);
  return std::move(sax.inner.cert);
}

}  // namespace cat0
