#include "fixtures.hpp"

#include <algorithm>
#include <numeric>

#include "oracles.hpp"

namespace mtkit::testing {

namespace {

const std::vector<std::string> kUrls = {
    "https://www.ecdc.europa.eu/en/covid-19/latest-evidence",
    "http://www.salute.gov.it/portale/nuovocoronavirus/dettaglioContenutiNuovoCoronavirus.jsp?lingua=italiano&id=5351",
    "www.who.int/emergencies/diseases/novel-coronavirus-2019",
    "https://www.rki.de/DE/Content/InfAZ/N/Neuartiges_Coronavirus/Steckbrief.html#doc13776792bodyText1",
    "https://www.mscbs.gob.es/profesionales/saludPublica/ccayes/alertasActual/nCov/home.htm",
    "https://solidarites-sante.gouv.fr/soins-et-maladies/maladies/maladies-infectieuses/coronavirus/",
    "http://example.org/path_(with)_parens?q=a,b;c=d",
};

const std::vector<std::string> kTags = {"<b>", "</b>", "<i>", "</i>", "<br/>", "<span class=\"x\">",
                                        "</span>"};
const std::vector<std::string> kTerms = {"COVID-19", "SARS-CoV-2", "WHO", "ECDC"};
const std::vector<std::string> kCompounds = {
    "Gesundheitsministerium", "Impfstoffzentrum", "Infektionsschutzgesetz", "Krankenhausbetten",
    "Schutzmasken", "Gesundheitsamt", "Atemschutzmasken", "Impfzentrum"};

struct Templates {
  Lang lang;
  std::vector<std::string> lines;
  std::vector<std::string> fillers;
};

// $U url, $T opening tag, $C closing tag, $D glossary term, $K compound,
// $F filler word, $N number.
const std::vector<Templates>& templates() {
  static const std::vector<Templates> t = {
      {Lang::en,
       {"The $F guidance on $D is available at $U.", "Please read the $Tlatest$C update about $D!",
        "Dr. Smith said: “Wash your hands for $N seconds.”", "Visit $U or call 1-800-$N; it's free.",
        "Cases rose by $N,5% in the $F week (see $U).", "Don't travel unless it's essential \u2014 stay safe.",
        "The $D report, “$F data”, was updated. A new version follows soon.",
        "Masks (e.g. FFP2) reduce transmission of $D."},
       {"regional", "weekly", "official", "updated", "national", "clinical"}},
      {Lang::fr,
       {"Le ministère publie les données sur $D : voir $U.", "L'épidémie de $D progresse-t-elle ?",
        "« Restez chez vous », a déclaré le $F ministre.", "Consultez $U pour l'attestation officielle.",
        "Le taux d'incidence est de $N,2 pour 100 000 habitants.",
        "Lavez-vous les mains ! C'est $Tessentiel$C pour tous.",
        "M. Dupont travaille avec l'$D depuis $N ans."},
       {"premier", "nouveau", "grand", "dernier", "principal"}},
      {Lang::de,
       {"Das $K meldet $N neue Fälle von $D.", "Weitere Informationen finden Sie unter $U.",
        "Laut dem $K gilt das $K ab Montag.", "Die $Tneuen$C Regeln betreffen alle $K.",
        "„Bleiben Sie zu Hause“, sagte Dr. Müller vom $K.", "Die Zahl der $K ist um $N,5 % gestiegen!",
        "Bitte tragen Sie $K in Bussen und Bahnen."},
       {"neue", "aktuelle", "offizielle", "regionale"}},
      {Lang::it,
       {"Il ministero ha pubblicato i dati su $D: vedi $U.", "L'emergenza $D non è finita, dice l'$F esperto.",
        "Lavarsi le mani è $Tfondamentale$C per tutti.", "Consulta $U per le ultime notizie.",
        "Il tasso di positività è del $N,3% oggi.", "«Restate a casa», ha detto il dott. Rossi.",
        "Dall'inizio dell'epidemia di $D sono stati fatti $N tamponi."},
       {"nuovo", "grande", "ultimo", "primo"}},
      {Lang::es,
       {"El ministerio publicó los datos sobre $D en $U.", "¿Cuándo termina la emergencia de $D?",
        "¡Lávate las manos con frecuencia! Es $Timportante$C.", "Consulta $U para más información.",
        "La incidencia es de $N,7 casos por cada 100.000 habitantes.",
        "«Quédate en casa», dijo el Dr. García de la $D.",
        "La nueva guía $F sobre $D llega hoy."},
       {"oficial", "nueva", "regional", "actual"}},
  };
  return t;
}

std::string fill(Rng& rng, const Templates& t, const std::string& pattern) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] != '$' || i + 1 >= pattern.size()) {
      out += pattern[i];
      continue;
    }
    char k = pattern[++i];
    switch (k) {
      case 'U': out += rng.pick(kUrls); break;
      case 'T': out += kTags[2 * rng.below(3)]; break;
      case 'C': out += kTags[1]; break;
      case 'D': out += rng.pick(kTerms); break;
      case 'K': out += rng.pick(kCompounds); break;
      case 'F': out += rng.pick(t.fillers); break;
      case 'N': out += std::to_string(rng.between(2, 999)); break;
      default: out += '$'; out += k;
    }
  }
  return out;
}

}  // namespace

std::vector<PipelineLine> pipeline_fixture(std::size_t lines, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PipelineLine> out;
  const auto& all = templates();
  for (std::size_t i = 0; i < lines; ++i) {
    const Templates& t = all[i % all.size()];
    std::string text = fill(rng, t, rng.pick(t.lines));
    // Some lines hold two sentences or exotic spacing.
    if (rng.chance(0.25)) text += " " + fill(rng, t, rng.pick(t.lines));
    if (rng.chance(0.1)) text = "  " + text + " ";
    out.push_back({t.lang, std::move(text)});
  }
  return out;
}

const std::vector<std::string>& fixture_urls() { return kUrls; }

std::string compound_lexicon_text() {
  return "gesundheit 120\nministerium 80\namt 40\nimpfstoff 60\nimpf 10\nzentrum 90\ninfektion 50\n"
         "schutz 70\ngesetz 85\nkrankenhaus 40\nbetten 30\nmasken 45\natem 25\n";
}

TwoDomainData two_domain_corpus(std::size_t pairs_per_domain, std::size_t lm_lines,
                                std::uint64_t seed) {
  Rng rng(seed);
  TwoDomainData d;
  auto in_src = make_words(rng, {"ka", "lo", "mi", "pe", "ru", "sa"}, 200, 2, 3);
  auto in_tgt = make_words(rng, {"bo", "di", "ne", "ta", "ul", "ve"}, 200, 2, 3);
  auto out_src = make_words(rng, {"zo", "vu", "xe", "gi", "fa", "hu"}, 200, 2, 3);
  auto out_tgt = make_words(rng, {"qa", "wo", "ye", "cu", "jo", "ix"}, 200, 2, 3);
  const std::vector<std::string> fn_src = {"il", "la", "di", "e", "che", "per"};
  const std::vector<std::string> fn_tgt = {"the", "of", "and", "a", "to", "in"};
  auto sentence = [&](const std::vector<std::string>& content, const std::vector<std::string>& fn) {
    std::string s;
    std::size_t n = rng.between(4, 14);
    for (std::size_t i = 0; i < n; ++i) {
      if (i) s += ' ';
      s += rng.chance(0.3) ? rng.pick(fn) : content[rng.zipf(content.size())];
    }
    return s;
  };
  for (std::size_t i = 0; i < lm_lines; ++i) {
    d.in_src.push_back(sentence(in_src, fn_src));
    d.in_tgt.push_back(sentence(in_tgt, fn_tgt));
    d.out_src.push_back(sentence(out_src, fn_src));
    d.out_tgt.push_back(sentence(out_tgt, fn_tgt));
  }
  d.pool.langs = d.langs;
  for (std::size_t i = 0; i < pairs_per_domain; ++i) {
    d.pool.pairs.push_back({corpus::Segment(sentence(in_src, fn_src)),
                            corpus::Segment(sentence(in_tgt, fn_tgt)), "in"});
    d.pool.pairs.push_back({corpus::Segment(sentence(out_src, fn_src)),
                            corpus::Segment(sentence(out_tgt, fn_tgt)), "out"});
  }
  std::shuffle(d.pool.pairs.begin(), d.pool.pairs.end(), rng.engine());
  return d;
}

CleaningFixture cleaning_fixture(std::uint64_t seed) {
  Rng rng(seed);
  CleaningFixture f;
  f.config.min_tokens = 3;
  f.config.max_tokens = 40;
  f.config.max_length_ratio = 2.5;
  f.config.drop_duplicates = true;
  auto vocab = make_words(rng, {"an", "bel", "co", "dur", "est", "fi", "gor"}, 300, 1, 3);
  std::size_t serial = 0;
  // Each side opens with a unique marker.
  auto side = [&](std::size_t tokens) {
    if (tokens == 0) return std::string();
    std::string s = "m" + std::to_string(serial++);
    for (std::size_t i = 1; i < tokens; ++i) s += " " + rng.pick(vocab);
    return s;
  };
  auto add = [&](std::size_t s, std::size_t t, const std::string& prov) {
    f.corpus.pairs.push_back({corpus::Segment(side(s)), corpus::Segment(side(t)), prov});
  };
  f.corpus.langs = {Lang::de, Lang::en};

  const std::size_t n_empty = 37, n_short = 53, n_long = 41, n_ratio = 64, n_dup = 45;
  const std::size_t n_valid = 1000 - n_empty - n_short - n_long - n_ratio - n_dup;
  for (std::size_t i = 0; i < n_empty; ++i) {
    switch (i % 3) {
      case 0: add(0, rng.between(3, 20), "empty"); break;
      case 1: add(rng.between(3, 20), 0, "empty"); break;
      default: add(0, 0, "empty");
    }
  }
  for (std::size_t i = 0; i < n_short; ++i) {
    std::size_t s = rng.between(1, 2);
    if (i % 2) add(s, rng.between(3, 5), "short");
    else add(rng.between(3, 5), s, "short");
  }
  for (std::size_t i = 0; i < n_long; ++i) {
    std::size_t l = rng.between(41, 70);
    if (i % 2) add(l, rng.between(3, 40), "long");
    else add(rng.between(3, 40), l, "long");
  }
  for (std::size_t i = 0; i < n_ratio; ++i) {
    std::size_t a = rng.between(3, 12);
    std::size_t b = std::min<std::size_t>(40, a * 3 + rng.below(3));  // ratio >= 2.6
    if (i % 2) add(a, b, "ratio");
    else add(b, a, "ratio");
  }
  std::vector<std::size_t> valid_at;
  for (std::size_t i = 0; i < n_valid; ++i) {
    std::size_t a = rng.between(3, 30);
    std::size_t b = rng.between((a * 2 + 4) / 5, std::min<std::size_t>(40, a * 5 / 2));
    b = std::max<std::size_t>(b, 3);
    valid_at.push_back(f.corpus.pairs.size());
    add(a, b, "valid");
  }
  for (std::size_t i = 0; i < n_dup; ++i) {
    auto copy = f.corpus.pairs[valid_at[i * 7 % valid_at.size()]];
    copy.provenance = "dup";
    f.corpus.pairs.push_back(copy);
  }
  std::shuffle(f.corpus.pairs.begin(), f.corpus.pairs.end(), rng.engine());
  f.expected_removed = {{"empty", n_empty}, {"too_short", n_short}, {"too_long", n_long},
                        {"ratio", n_ratio}, {"duplicate", n_dup}};
  f.expected_retained = n_valid;
  return f;
}

std::vector<std::string> perturb(Rng& rng, const std::vector<std::string>& lines, double rate) {
  std::vector<std::string> out;
  for (const auto& l : lines) {
    auto w = words_of(l);
    for (auto& t : w) {
      if (rng.chance(rate)) t = "zzz";
    }
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + w[i];
    out.push_back(s);
  }
  return out;
}

}  // namespace mtkit::testing
