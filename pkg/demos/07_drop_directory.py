"""
The drop-directory prediction service
=====================================

"""

import tempfile
import time
from pathlib import Path

from verdictpipe.corpus import CaseDocument
from verdictpipe.labeler import LabelerConfig, extract_disposition
from verdictpipe.learners import LearnerSpec
from verdictpipe.pipeline import fit_bundle
from verdictpipe.predictsvc import WatchConfig, Watcher
from verdictpipe.synth import generate_synthetic_corpus

corpus = generate_synthetic_corpus(90, seed=5)
docs = [CaseDocument(f"case_{i:04d}", t, "synthetic", extract_disposition(t)) for i, (t, _) in enumerate(corpus)]
bundle = fit_bundle(docs, LearnerSpec("gbt", {"n_rounds": 30}), labeler=LabelerConfig(exclude_from_features=True))

root = Path(tempfile.mkdtemp())
inbox, outbox = root / "in", root / "out"
inbox.mkdir()
outbox.mkdir()

# a file is handled once its size and mtime hold still for the stability window
watcher = Watcher(bundle, WatchConfig(inbox, outbox, poll_interval=0.2, stability_window=0.5))
(inbox / "fresh_case.txt").write_text(generate_synthetic_corpus(30, seed=8)[2][0])
(inbox / "blank.txt").write_text("")

for _ in range(6):
    watcher.poll_once()
    time.sleep(0.2)

for p in sorted(outbox.iterdir()):
    print("==", p.name)
    print(p.read_text())

# a restarted watcher reads processed.list and leaves both files alone
print(Watcher(bundle, watcher.cfg).poll_once())
