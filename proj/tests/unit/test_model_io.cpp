#include <gtest/gtest.h>

#include <sstream>

#include "svddfraud/dataio.hpp"
#include "svddfraud/errors.hpp"
#include "svddfraud/model_io.hpp"
#include "test_util.hpp"

using namespace svddfraud;

TEST(ModelIo, SvddRoundTripIsBitExact) {
  testutil::TempDir dir;
  DataMatrix m = dataio::generate_fraud_like({.rows = 300, .seed = 5});
  m.labels.clear();
  SvddConfig cfg;
  cfg.kernel.sigma = 1.0 / 3.0;
  cfg.fracrej = 0.07;
  const SvddModel model = train_svdd(m, cfg);
  model_io::save(dir.path() / "a.model", model);
  const auto any = model_io::load(dir.path() / "a.model");
  ASSERT_TRUE(std::holds_alternative<SvddModel>(any));
  const auto& back = std::get<SvddModel>(any);
  EXPECT_EQ(back.kernel.sigma, model.kernel.sigma);
  EXPECT_EQ(back.alphas, model.alphas);
  EXPECT_EQ(back.support_rows, model.support_rows);
  EXPECT_EQ(back.support_indices, model.support_indices);
  EXPECT_EQ(back.radius_sq, model.radius_sq);
  EXPECT_EQ(back.offset_term, model.offset_term);
  EXPECT_EQ(back.box_c, model.box_c);
  EXPECT_EQ(back.training_rows, model.training_rows);
  for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(decision_score(back, m.row(i)), decision_score(model, m.row(i)));

  model_io::save(dir.path() / "b.model", back);
  EXPECT_EQ(testutil::slurp(dir.path() / "a.model"), testutil::slurp(dir.path() / "b.model"));
}

TEST(ModelIo, SvmRoundTripIsBitExact) {
  const DataMatrix m = dataio::generate_fraud_like({.rows = 300, .fraud_fraction = 0.1, .seed = 6});
  SvmConfig cfg;
  cfg.box_c = 3.7;
  const SvmModel model = train_svm(m, cfg);
  std::stringstream ss;
  model_io::write_model(ss, model);
  const auto any = model_io::read_model(ss);
  ASSERT_TRUE(std::holds_alternative<SvmModel>(any));
  const auto& back = std::get<SvmModel>(any);
  EXPECT_EQ(back.signed_alphas, model.signed_alphas);
  EXPECT_EQ(back.bias, model.bias);
  EXPECT_EQ(back.support_rows, model.support_rows);
  for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(svm_decision(back, m.row(i)), svm_decision(model, m.row(i)));
}

TEST(ModelIo, HeaderAndFieldOrder) {
  DataMatrix m(1);
  const double a[] = {0.0}, b[] = {1.0};
  m.append_row(a);
  m.append_row(b);
  SvddConfig cfg;
  cfg.box_c = 1.0;
  std::stringstream ss;
  model_io::write_model(ss, train_svdd(m, cfg));
  std::vector<std::string> keys;
  std::string line;
  while (std::getline(ss, line)) keys.push_back(line.substr(0, line.find(' ')));
  const std::vector<std::string> expected{"svddfraud-model", "type",          "kernel",  "dim", "box_c",
                                          "radius_sq",       "offset_term",   "training_rows", "support"};
  ASSERT_GE(keys.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(keys[i], expected[i]);
}

TEST(ModelIo, RejectsBadFiles) {
  testutil::TempDir dir;
  EXPECT_THROW(model_io::load(dir.path() / "none.model"), DataError);
  EXPECT_THROW(model_io::load(dir.write("v.model", "svddfraud-model 99\n")), DataError);
  EXPECT_THROW(model_io::load(dir.write("t.model", "svddfraud-model 1\ntype tree\n")), DataError);
  EXPECT_THROW(model_io::load(dir.write("x.model", "svddfraud-model 1\ntype svdd\nkernel rbf 1\ndim 2\n")), DataError);
}
