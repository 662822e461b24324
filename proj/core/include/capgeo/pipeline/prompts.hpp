#pragma once

#include <map>
#include <string>

namespace capgeo::pipeline {

// Renders {{name}} placeholders; unknown placeholders are left verbatim.
std::string render_template(const std::string& tpl,
                            const std::map<std::string, std::string>& vars);

// The shipped prompt templates. Built-in defaults can be overridden by
// files in a prompts directory (caption.txt, reasoning.txt, extract_gt.txt,
// extract_response.txt, match.txt); template edits flow into request
// fingerprints, so cached runs never mix prompt versions.
struct PromptLibrary {
  std::string caption;           // {{question}}
  std::string reasoning;         // {{question}}, {{caption_section}}, {{answer_instruction}}
  std::string caption_section;   // {{caption}}
  std::string extract_gt;        // {{caption}}
  std::string extract_response;  // {{caption}}
  std::string match;             // {{gt_keypoints}}, {{response_keypoints}}
  std::string answer_choice;
  std::string answer_numeric;
  std::string answer_text;

  static PromptLibrary defaults();
  static PromptLibrary load(const std::string& dir);  // empty dir = defaults

  std::string digest() const;
};

}  // namespace capgeo::pipeline
