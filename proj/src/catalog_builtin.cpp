// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

// Built-in questionnaire content. Score lists follow the facet boxes; questions
// without a score annotation use the stock binary rule (Y=1, N=0).

#include <initializer_list>

#include "catalog_internal.hpp"
#include "dataworth/catalog.hpp"

namespace dataworth::detail {

namespace {

using Scores = std::initializer_list<std::pair<const char*, const char*>>;

class Builder {
 public:
  explicit Builder(std::string origin) { doc_.origin = std::move(origin); }

  void facet(const char* id, const char* title, const char* description) {
    doc_.facets.push_back(FacetSpec{id, title, description, {}, canonical_});
  }

  QuestionSpec& binary(const char* name, const char* prompt) {
    QuestionSpec& q = add(name, prompt, ResponseKind::binary);
    q.allowed_values = {"Y", "N"};
    q.score_rule.map = {{"Y", Rational(1)}, {"N", Rational(0)}};
    q.score_rule.default_binary = true;
    return q;
  }

  /// Binary question where "N" is the preferred answer.
  QuestionSpec& reversed(const char* name, const char* prompt) {
    QuestionSpec& q = binary(name, prompt);
    q.score_rule.map = {{"Y", Rational(0)}, {"N", Rational(1)}};
    q.score_rule.default_binary = false;
    return q;
  }

  QuestionSpec& categorical(const char* name, const char* prompt, Scores scores,
                            ResponseKind kind = ResponseKind::categorical) {
    QuestionSpec& q = add(name, prompt, kind);
    for (const auto& [label, score] : scores) {
      q.allowed_values.emplace_back(label);
      q.score_rule.map.emplace_back(label, Rational::parse(score));
    }
    q.score_rule.numeric_passthrough = kind == ResponseKind::categorical_or_numeric;
    return q;
  }

  void set_canonical(bool canonical) { canonical_ = canonical; }
  CatalogDocument take() { return std::move(doc_); }

 private:
  QuestionSpec& add(const char* name, const char* prompt, ResponseKind kind) {
    FacetSpec& f = doc_.facets.back();
    QuestionSpec q;
    q.id = f.id + "." + name;
    q.facet_id = f.id;
    q.prompt = prompt;
    q.kind = kind;
    q.canonical = canonical_;
    q.origin = doc_.origin;
    f.question_ids.push_back(q.id);
    doc_.questions.push_back(std::move(q));
    return doc_.questions.back();
  }

  CatalogDocument doc_;
  bool canonical_ = true;
};

}  // namespace

CatalogDocument builtin_canonical_document() {
  Builder b("built-in catalog");

  b.facet("data_layout", "Data Layout",
          "Whether records have clear boundaries (structured), partial structure "
          "around free content (semi-structured), or none (unstructured).");
  {
    auto& q = b.categorical("structure", "What is the data structure?",
                            {{"Structured", "1.0"}, {"Semi-structured", "0.5"}, {"Unstructured", "0.25"}});
    q.aliases = {"What is the data layout?"};
    q.applicability = "auto: profiler classifies by detected format";
  }

  b.facet("data_age", "Data Age", "Recency of the data and how quickly it goes stale.");
  {
    auto& q = b.categorical("currency", "How current is the data?",
                            {{"Latest", "1"}, {"Recent", "0.75"}, {"Old", "0.25"}});
    q.applicability = "Not applicable and Dont know both score 0";
  }
  b.reversed("less_useful_with_age", "Does the data become less useful with age?");
  b.binary("gains_value_with_age", "Does the data gain value with age?");
  b.reversed("later_instance_known", "Is there a known later instance of the data?");
  b.categorical("update_frequency", "How frequently does the data get outdated/updated?",
                {{"Daily", "0.25"}, {"Weekly", "0.5"}, {"Monthly", "0.75"}, {"Yearly", "1.0"}});

  b.facet("data_volume", "Data Volume", "Size of the data set, which drives storage and processing cost.");
  {
    auto& q = b.categorical("size", "What is the data size?",
                            {{"under_500MB", "0.5"},
                             {"500MB_to_10GB", "0.75"},
                             {"10GB_to_100GB", "1.0"},
                             {"over_100GB", "0.5"}});
    q.aliases = {"What is the size of the data?"};
    q.value_parser = "byte_size";
    q.applicability = "size < 500MB; 500MB <= size < 10G; 10G <= size <= 100G; size > 100G";
  }

  b.facet("composition", "Composition", "Homogeneity of the instances in the data set.");
  b.binary("primary_types", "Are the data point instances primary data type?")
      .aliases = {"Are these instances of primary data types?"};
  b.binary("instances_similar", "Are all instances similar?");

  b.facet("format", "Data Format",
          "File format, schema availability, relational origin, standards "
          "compliance and openness of the storage format.");
  {
    auto& q = b.categorical("file_format", "What is the format of the data set file?",
                            {{"csv", "1"},
                             {"pdf", "0"},
                             {"tsv", "1"},
                             {"gif_jpg", "0"},
                             {"xml", "1"},
                             {"json", "1"},
                             {"other", "0"}});
    q.aliases = {"What is the format of data set"};
    q.value_aliases = {{"gif", "gif_jpg"}, {"jpg", "gif_jpg"}, {"jpeg", "gif_jpg"},
                       {"gif,jpg", "gif_jpg"}, {"txt", "other"}};
  }
  b.binary("schema", "Does it have a schema?");
  b.binary("relational_export", "Is it an export or query result of relational data?");
  b.binary("standard", "Does it adhere to a standard?").aliases = {"Does it have any standard?"};
  b.binary("proprietary_open", "If in proprietary format, is it open?")
      .aliases = {"Is the data stored in proprietary formats."};
  b.binary("normalized", "Is it in normalized form?");

  b.facet("data_usage", "Data Usage", "Respondent's view of how easy the data is to put to use.");
  b.categorical("ease", "How easy is it to utilise the data?",
                {{"Simple", "1"}, {"Moderate", "0.6"}, {"Difficult", "0.3"}, {"Complex", "0"}});

  b.facet("sensitivity", "Data Sensitivity",
          "Presence of confidential, personal, financial, health or protected "
          "information that restricts sharing and adds breach risk.");
  b.binary("confidential_free", "Is it free of confidential information?");
  b.binary("pii_free", "Is it free of personal identifiable information?")
      .aliases = {"Does it contain personal identifiable information?"};
  b.binary("mandatory_retention_free", "Is it free of information to be retained for mandatory purposes?");
  b.binary("financial_free", "Is it free of revenue or financial data?")
      .aliases = {"Does it have revenue or financial data?"};
  b.reversed("medical", "Does it have Medical data/ health data?");
  b.reversed("protective_variables", "Does it have protective variables?")
      .aliases = {"Does it have protected attribute?"};

  b.facet("statistics", "Statistical Properties", "Fitness of the data for common kinds of statistical analysis.");
  b.binary("classification", "Is it suitable for classification models?");
  b.binary("linear_regression", "Is it suitable for linear regression models?");
  b.binary("clustering", "Is it suitable for clustering models?");
  b.binary("used_in_ml", "Has it been used in ML algorithms already?");
  b.binary("sampled", "Was any sampling applied on the data to get this sample?");
  b.binary("time_series", "Is it time-series data?");
  b.binary("bivariate", "Is it suitable for bivariate analysis?");
  b.binary("multivariate", "Is it suitable for multivariate analysis?");

  b.facet("granularity", "Data Granularity", "Instance-level detail versus aggregate or summary records.");
  b.reversed("aggregate", "Is it aggregate or summary information?");

  b.facet("frequency_of_use", "Frequency of Use", "How recently the data was used, as a proxy for future use.");
  {
    auto& q = b.categorical("last_used", "When was the data last used?",
                            {{"This month", "1"},
                             {"This year", "0.75"},
                             {"In last 5 years", "0.5"},
                             {"More than 5 years ago", "0"}});
    q.value_aliases = {{"TM", "This month"}, {"TY", "This year"}, {"last 5 yrs", "In last 5 years"}};
  }
  b.binary("known_future_use", "Is there a 'known' future use?");

  b.facet("quality", "Data Quality",
          "Completeness, correctness, duplication, precision and noise, "
          "answered for the data set as it stands.");
  b.binary("fields_complete", "Are all the fields complete?");
  b.binary("error_free", "Is it error-free?");
  b.reversed("missing_instances", "Are there known missing instances?");
  b.binary("fills_missing_values", "Does it fill the missing values in an existing data set?");
  b.binary("complete_for_purpose", "Is it complete, with respect to the purpose it defines?");
  b.reversed("duplicates", "Is it known to have duplicates?");
  b.binary("complements_existing", "Does it complement or supplement an existing data set?");
  b.binary("accurate", "Is the data accurate?");
  b.categorical("precision", "What is the precision?", {{"High", "1"}, {"Medium", "0.5"}, {"Low", "0"}},
                ResponseKind::categorical_or_numeric)
      .applicability = "Enter a number between 0 and 1 or select High/Medium/Low";
  b.categorical("recall", "What is the recall?", {{"High", "1"}, {"Medium", "0.5"}, {"Low", "0"}},
                ResponseKind::categorical_or_numeric)
      .applicability = "Enter a number between 0 and 1 or select High/Medium/Low";
  b.binary("consistency", "Is the data consistent within the data set?");
  b.reversed("noise", "Does the data have noise?");

  b.facet("velocity", "Data Velocity", "Rate at which data arrives and whether it is a stream.");
  b.categorical("generation_rate", "How rapidly can it be said to be generated?",
                {{"Very fast", "0.5"}, {"Fast", "0.75"}, {"Medium", "1.0"}, {"Not significant", "1.0"}})
      .value_aliases = {{"NS", "Not significant"}};
  {
    auto& q = b.binary("streaming", "Is it streaming data?");
    q.low_confidence = true;
    q.applicability = "no preferred direction is annotated; stock binary scoring applied";
  }

  b.facet("sourcing", "Data Sourcing",
          "How the data was obtained, who else can get it, and whether "
          "alternatives exist.");
  b.reversed("accessible_by_all", "Can this data be easily accessed by all?");
  b.categorical("obtained", "How was the data obtained?",
                {{"Survey", "1"},
                 {"Customer feedback", "1"},
                 {"Transactional", "0.5"},
                 {"Web crawler", "0"},
                 {"Licensing", "0.5"},
                 {"Outright purchase", "0.75"},
                 {"Others", "0"}})
      .value_aliases = {{"T", "Transactional"}, {"S", "Survey"}, {"Invited/Survey", "Survey"}};
  {
    auto& q = b.categorical("source_count", "Is the data aggregated from many sources or from single source?",
                            {{"Multiple sources", "0.5"}, {"Single source", "0.5"}});
    q.value_aliases = {{"Multiple", "Multiple sources"}, {"Many", "Multiple sources"},
                       {"Single", "Single source"}, {"S", "Single source"}};
    q.low_confidence = true;
    q.applicability = "no preferred direction is annotated; both answers score neutrally";
  }
  {
    auto& q = b.binary("exclusive_access", "Is this data easy for me to get, difficult for others?");
    q.low_confidence = true;
  }
  b.binary("enterprise_generated", "Is this enterprise-generated?");
  b.reversed("public", "Is this publicly available?");
  b.reversed("machine_generated", "Is this data machine generated?");
  b.reversed("alternates_known", "Are there known alternates for this data set?");

  b.facet("transformation", "Transformation", "Processing already applied to the data, including anonymization.");
  b.binary("transformed", "Is it known to have had data transformations?");
  b.reversed("encrypted", "Is it encrypted data?");
  b.binary("anonymized", "Is it anonymized data?").aliases = {"Is it anonymised data?"};

  b.facet("processing", "Data Processing", "Availability of tools to cleanse and process the data.");
  b.binary("cleanse_tools", "Are there tools or programs to cleanse the data?");
  b.binary("process_tools", "Are there tools or programs to process the data in the current format?")
      .aliases = {"Are there tools or programs to pre-process the data?"};

  b.facet("enterprise", "Enterprise Aspects", "How the data is used and perceived inside an enterprise.");
  b.binary("making_money", "Is the data already making money?");
  b.binary("improves_efficiency", "Will it improve the efficiency of an existing application or business process?");
  b.binary("new_channel", "Does it introduce a new channel to reach to customers?");
  b.binary("complements_application", "Does it complement an existing application?");
  b.binary("increases_reach", "Does it increase customer reach?");
  b.categorical("business_process", "Which parts of the business process does it contribute to?",
                {{"Sales", "1"},
                 {"Marketing", "1"},
                 {"HR", "1"},
                 {"Operations", "1"},
                 {"Finance", "1"},
                 {"Accounting", "1"},
                 {"Payroll", "1"},
                 {"Others", "0"}});
  b.categorical("hierarchy", "At which hierarchy in the organization is the data used?",
                {{"Executive", "1"}, {"Middle management", "0.75"}, {"Others", "0.5"}, {"Multiple", "1"}})
      .value_aliases = {{"MM", "Middle management"}};

  b.facet("legal", "Legal and Access Aspects",
          "Legal controls, contracts, licences and other restrictions on "
          "using the data, and ease of access.");
  b.binary("free_of_restrictions", "Is this data free of any legal restrictions in usage?");
  b.reversed("contract_acquired", "Was this data acquired as part of some contract?");
  b.reversed("contractual_obligations", "Are there any contractual obligations on the data?");
  b.binary("consent", "If pertaining to 'information about people', was there consent to use?");
  b.reversed("license", "Is it governed by some license?");
  b.reversed("export_restrictions", "Are there export restrictions?");
  b.binary("easy_access", "Is the data easy to access?");

  CatalogDocument doc = b.take();
  doc.version = std::string(Catalog::kCanonicalVersion);
  return doc;
}

CatalogDocument builtin_examples_extension() {
  Builder b("examples-extension pack");
  b.set_canonical(false);

  // Questions only seen in the worked scoring tables. They join existing
  // facets except the update-frequency one, which gets its own facet.
  b.facet("data_volume", "Data Volume", "");
  b.reversed("storage_expensive", "Is it expensive to store this data?");
  b.facet("statistics", "Statistical Properties", "");
  b.reversed("uniform_distribution", "is data uniformly distributed over different fields?");
  b.facet("legal", "Legal and Access Aspects", "");
  b.binary("restrictions", "Are there legal restrictions on using this data?");
  b.facet("data_updation", "Data Updation", "Whether the data set is refreshed frequently.");
  b.reversed("frequent", "Is the data updated Frequently?");

  CatalogDocument doc = b.take();
  // Only the facet that does not already exist is declared; the others are
  // references used to place the questions.
  std::vector<FacetSpec> declared;
  for (auto& f : doc.facets) {
    if (f.id == "data_updation") declared.push_back(f);
  }
  doc.facets = std::move(declared);
  for (auto& q : doc.questions) q.low_confidence = true;
  return doc;
}

}  // namespace dataworth::detail
