// Copyright 2026 The ekrt Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ekrt: command-line front end for building and running recognition
// chains from a config file.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ekrt/base/error.h"
#include "ekrt/base/matrix-io.h"
#include "ekrt/decoder/decoder-component.h"
#include "ekrt/transport/transport-components.h"
#include "ekrt/tools/chain-builder.h"
#include "ekrt/tools/session.h"
#include "ekrt/tools/toy-model.h"
#include "ekrt/vad/vad-component.h"

namespace {

using namespace ekrt;

struct Args {
  std::string config;
  std::string wav;
  std::vector<std::string> wavs;
  std::string output;
  std::string address;
  bool realtime = false;
  int nbest = 0;
  ToyModelConfig toy;
};

// Writes to --output if given, else stdout.
class Sink {
 public:
  explicit Sink(const std::string &path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw ConfigError("cannot write '" + path + "'");
  }
  std::ostream &os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

BuildOptions Options(const Args &a) {
  BuildOptions o;
  if (!a.wav.empty()) o.wav = a.wav;
  if (a.realtime) o.realtime = true;
  if (a.nbest > 0) o.nbest = a.nbest;
  return o;
}

// The configured list cut after the last component satisfying keep.
std::vector<std::string> Prefix(const ChainConfig &c, const char *what,
                                bool (*keep)(const std::string &)) {
  std::vector<std::string> list = c.GetList("chain", "components");
  std::size_t end = 0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string name = list[i].substr(0, list[i].find('@'));
    if (keep(name)) end = i + 1;
  }
  if (end == 0)
    throw ConfigError(c.source() + ": [chain] components: no " +
                      std::string(what) + " stage");
  list.resize(end);
  return list;
}

bool IsFeatureStage(const std::string &n) {
  return n == "mfcc" || n == "fbank" || n == "spectrogram" || n == "cmvn" ||
         n == "delta" || n == "splice" || n == "lda" || n == "mixture";
}

bool IsVadStage(const std::string &n) { return n == "vad"; }

const WordTable &Words(const BuiltChain &b, const ChainConfig &c) {
  if (!b.words)
    throw ConfigError(c.source() + ": [decoder] words: needed to print "
                      "hypotheses");
  return *b.words;
}

int Featurize(const Args &a) {
  const ChainConfig c = ChainConfig::FromFile(a.config);
  BuildOptions o = Options(a);
  o.components = c.Has("chain", "features")
                     ? c.GetList("chain", "features")
                     : Prefix(c, "feature", IsFeatureStage);
  BuiltChain b = BuildChain(c, o);
  const SessionResult r = RunSession(b);
  Matrix all;
  for (const Packet &p : r.packets)
    if (p.kind() == PayloadKind::kFeatures)
      all.AppendRows(std::get<FeatureMatrix>(p.payload).data);
  Sink sink(a.output);
  WriteMatrix(sink.os(), all);
  std::cerr << "featurize: " << all.rows() << " frames of " << all.cols()
            << " dims\n";
  return 0;
}

int Vad(const Args &a) {
  const ChainConfig c = ChainConfig::FromFile(a.config);
  BuildOptions o = Options(a);
  o.components = Prefix(c, "vad", IsVadStage);
  BuiltChain b = BuildChain(c, o);
  const SessionResult r = RunSession(b);
  Sink sink(a.output);
  std::int64_t first = 0, count = 0;
  int segment = 0;
  auto close = [&] {
    if (count == 0) return;
    sink.os() << "segment " << segment++ << "\t" << first << "\t" << count
              << "\n";
    first += count;
    count = 0;
  };
  for (const Packet &p : r.packets) {
    if (p.kind() == PayloadKind::kFrames)
      count += static_cast<std::int64_t>(
          std::get<FrameBlock>(p.payload).frames.rows());
    if (p.flags.any()) close();
  }
  close();
  sink.os() << "forwarded " << b.vad->frames_forwarded() << " dropped "
            << b.vad->frames_dropped() << " endpoints " << b.vad->endpoints()
            << "\n";
  return 0;
}

void PrintDecode(const Args &a, const BuiltChain &b, const ChainConfig &c,
                 const SessionResult &r) {
  Sink sink(a.output);
  PrintSegments(sink.os(), r.segments, Words(b, c), a.nbest > 0 ? a.nbest : 1);
}

int Decode(const Args &a) {
  const ChainConfig c = ChainConfig::FromFile(a.config);
  BuiltChain b = BuildChain(c, Options(a));
  Words(b, c);
  const SessionResult r = RunSession(b);
  PrintDecode(a, b, c, r);
  return 0;
}

int Serve(const Args &a) {
  const ChainConfig c = ChainConfig::FromFile(a.config);
  BuildOptions o = Options(a);
  o.list_key = "server";
  if (!a.address.empty()) o.listen = a.address;
  BuiltChain b = BuildChain(c, o);
  if (b.listener)
    std::cerr << "serve: listening on port " << b.listener->port() << "\n";
  const SessionResult r = RunSession(b);
  if (b.decoder) {
    PrintDecode(a, b, c, r);
  } else {
    std::cerr << "serve: received " << r.packets.size() << " packets\n";
  }
  return 0;
}

int Client(const Args &a) {
  const ChainConfig c = ChainConfig::FromFile(a.config);
  BuildOptions o = Options(a);
  o.list_key = "client";
  if (!a.address.empty()) o.connect = a.address;
  BuiltChain b = BuildChain(c, o);
  RunSession(b);
  auto &sender =
      dynamic_cast<SenderComponent &>(b.chain->component(b.chain->size() - 1));
  if (sender.sender())
    std::cerr << "client: " << sender.sender()->attempts() << " attempts, "
              << sender.sender()->resends() << " resends\n";
  return 0;
}

int Bench(const Args &a) {
  const ChainConfig c = ChainConfig::FromFile(a.config);
  const RtfReport report = BenchRtf(c, a.wavs, Options(a));
  Sink sink(a.output);
  PrintRtfReport(sink.os(), report);
  return 0;
}

int MakeToy(const Args &a) {
  const ToyModel m = MakeToyModel(a.toy);
  WriteToyModel(m, a.output);
  std::cerr << "make-toy-model: " << m.graph.num_states() << " states, "
            << m.audio.seconds() << " s of audio, " << m.reference.size()
            << " words in " << a.output << "\n";
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"ekrt: streaming speech recognition chains"};
  app.require_subcommand(1);
  app.failure_message([](const CLI::App *, const CLI::Error &e) {
    return std::string("ekrt: ") + e.what() + "\n";
  });
  Args a;
  int (*run)(const Args &) = nullptr;

  auto add = [&](const char *name, const char *help, int (*fn)(const Args &)) {
    CLI::App *sub = app.add_subcommand(name, help);
    sub->callback([&run, fn] { run = fn; });
    return sub;
  };
  auto config = [&](CLI::App *s) {
    s->add_option("--config", a.config, "chain config file")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto wav = [&](CLI::App *s) {
    s->add_option("--wav", a.wav, "input WAV (16-bit PCM mono)")
        ->check(CLI::ExistingFile);
    s->add_flag("--realtime", a.realtime, "pace input at 1x speed");
  };
  auto output = [&](CLI::App *s) {
    s->add_option("--output", a.output, "output file (default stdout)");
  };
  auto nbest = [&](CLI::App *s) {
    s->add_option("--nbest", a.nbest, "hypotheses printed per segment")
        ->check(CLI::PositiveNumber);
  };

  CLI::App *s = add("featurize", "dump features as a text matrix", Featurize);
  config(s), wav(s), output(s);
  s = add("vad", "report speech segments and endpoints", Vad);
  config(s), wav(s), output(s);
  s = add("decode", "decode a recording", Decode);
  config(s), wav(s), nbest(s), output(s);
  s = add("serve", "run the server half of a distributed chain", Serve);
  config(s), nbest(s), output(s);
  s->add_option("--listen", a.address, "host:port to accept on");
  s = add("client", "run the client half of a distributed chain", Client);
  config(s), wav(s);
  s->add_option("--connect", a.address, "host:port of the server");
  s = add("bench-rtf", "measure the real-time factor", Bench);
  config(s), output(s);
  s->add_option("--wav", a.wavs, "input WAV files")->check(CLI::ExistingFile);
  s = add("make-toy-model", "write a synthetic model and test set", MakeToy);
  s->add_option("--output", a.output, "output directory")->required();
  s->add_option("--seed", a.toy.seed, "random seed");
  s->add_option("--pdfs", a.toy.n_pdfs, "number of pdfs, silence included");
  s->add_option("--words", a.toy.n_words, "vocabulary size");
  s->add_option("--seconds", a.toy.seconds, "test audio length (0: short)");
  s->add_option("--gap-ms", a.toy.gap_ms, "silence gap inside the test audio");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }
  try {
    return run(a);
  } catch (const std::exception &e) {
    std::string msg = e.what();
    for (char &ch : msg)
      if (ch == '\n') ch = ' ';
    std::cerr << "ekrt " << app.get_subcommands().front()->get_name() << ": "
              << msg << "\n";
    return 1;
  }
}
