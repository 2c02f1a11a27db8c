"""Synthetic judgment generator for desk-scale end-to-end runs.

Each document mixes neutral procedural boilerplate with sentences from a
class-correlated pool and ends with one operative-order sentence that the
default labeler patterns recognise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .labeler import Disposition
from .learners.base import stream

BOILERPLATE = (
    "Leave granted by this Court on the earlier date of hearing.",
    "We have heard learned counsel appearing for the parties at length.",
    "The facts giving rise to the present proceedings lie in a narrow compass.",
    "The respondent was served and entered appearance through counsel.",
    "Learned senior counsel took us through the pleadings and the material documents.",
    "The record of the trial court was summoned and perused by us.",
    "The parties filed written submissions and compilations of judgments.",
    "The matter was listed for final hearing after completion of pleadings.",
    "Counsel for the State placed reliance upon the counter affidavit filed in the matter.",
    "The relevant statutory provisions may be noticed at this stage.",
    "It is necessary to briefly recapitulate the chronology of events.",
    "The first information report was registered at the local police station.",
    "The suit property is situated within the municipal limits of the district.",
    "The tenancy was created under a written agreement between the parties.",
    "A notice under the relevant section was issued to the landlord.",
    "The Division Bench heard the writ petition along with connected matters.",
    "The tribunal recorded evidence of witnesses examined on behalf of both sides.",
    "The learned Single Judge framed issues arising from the pleadings.",
    "Both parties led oral and documentary evidence before the court below.",
    "The prosecution examined several witnesses to prove its case.",
    "The accused denied the incriminating circumstances put to him.",
    "The claimant sought compensation under the applicable enactment.",
    "The employer contested the claim on several grounds.",
    "An interim order was passed by this Court during the pendency of proceedings.",
    "Counsel for the appellant handed over a short note of submissions.",
    "The question of law framed for our consideration is set out below.",
    "The appellate authority remitted the assessment after hearing the assessee.",
    "The contract contained an arbitration clause governing disputes between parties.",
    "The acquisition notification was published in the official gazette.",
    "The service rules governing promotion were amended from time to time.",
    "The complainant lodged a report with the concerned authority.",
    "The revenue records reflected mutation entries in favour of the vendor.",
    "The learned Additional Solicitor General appeared on behalf of the Union.",
    "Several precedents of this Court were cited at the bar.",
    "The matter has a chequered history spanning more than a decade.",
    "We have carefully considered the rival submissions advanced before us.",
)

CLASS_POOLS = {
    Disposition.ALLOW: (
        "The High Court overlooked material evidence that went to the root of the matter.",
        "The impugned judgment suffers from a manifest error apparent on the face of record.",
        "The findings recorded below are perverse and contrary to the documentary evidence.",
        "The appellant was denied a fair opportunity of hearing in breach of natural justice.",
        "The reasoning adopted by the High Court cannot be sustained in law.",
        "The trial court misread the testimony of the independent eyewitness.",
        "The authority acted without jurisdiction in passing the cancellation order.",
        "The benefit of doubt ought to have been extended to the appellant.",
        "The High Court erroneously reversed a well reasoned acquittal.",
        "The conclusion reached below rests on conjecture rather than proof.",
        "The impugned order is vitiated by non application of mind.",
        "The statutory precondition for invoking the penal provision was never satisfied.",
        "The appellant has made out a strong case for interference by this Court.",
        "The recovery memo was unreliable and uncorroborated by any public witness.",
    ),
    Disposition.DISMISS: (
        "We find no infirmity in the concurrent findings recorded by the courts below.",
        "The High Court has correctly appreciated the evidence on record.",
        "The view taken by the High Court is a plausible view calling for no interference.",
        "The appellant failed to discharge the burden placed upon him by law.",
        "The grounds urged lack substance and merit no consideration.",
        "The testimony of the prosecution witnesses is consistent and trustworthy.",
        "The delay in approaching the court remains wholly unexplained.",
        "The appellant is guilty of suppression of material facts.",
        "The well reasoned judgment of the High Court warrants no interference.",
        "The chain of circumstances unerringly points towards the guilt of the accused.",
        "No substantial question of law arises for determination in this case.",
        "The contentions raised are squarely covered against the appellant by binding precedent.",
        "We are in complete agreement with the reasoning of the Division Bench.",
        "The appellant has not been able to point out any illegality in the impugned order.",
    ),
    Disposition.DISPOSE: (
        "The matter requires fresh consideration by the competent authority.",
        "Liberty is granted to the parties to raise all contentions before the tribunal.",
        "The authority shall pass a reasoned order within three months from today.",
        "The matter is remitted for fresh adjudication in accordance with law.",
        "The parties have arrived at an amicable settlement during pendency of proceedings.",
        "The State shall consider the representation of the petitioner sympathetically.",
        "The grievance of the appellant has become infructuous owing to subsequent events.",
        "The question is left open to be decided in an appropriate case.",
        "Directions are issued for expeditious completion of the pending inquiry.",
        "The competent authority shall decide the pending application after hearing the parties.",
        "The parties shall maintain status quo until the remand proceedings conclude.",
        "The undertaking given by counsel is recorded and accepted.",
        "Without expressing any opinion on merits we remand the matter.",
        "The tribunal shall endeavour to dispose the remanded proceedings expeditiously.",
    ),
}

DISPOSITION_TEMPLATES = {
    Disposition.ALLOW: (
        "In the result, the appeal is allowed and the impugned judgment is set aside.",
        "The appeals are allowed with no order as to costs.",
        "Accordingly, the appeal stands allowed.",
        "For the reasons aforesaid, the appeal is allowed.",
    ),
    Disposition.DISMISS: (
        "In the result, the appeal is dismissed.",
        "The appeals are dismissed with costs.",
        "Consequently, the special leave petition is dismissed.",
        "Accordingly, the appeal is dismissed.",
    ),
    Disposition.DISPOSE: (
        "The appeal is disposed of in the above terms.",
        "The appeals are disposed of with the aforesaid directions.",
        "With these observations, the appeal stands disposed of.",
        "The civil appeal is accordingly disposed of.",
    ),
}

CLOSING = (
    "There shall be no order as to costs.",
    "Pending interlocutory applications shall be listed before the Registrar.",
    "A copy of this judgment be sent to the court concerned.",
    "Parties to bear their own costs.",
)


@dataclass(frozen=True)
class SynthConfig:
    boilerplate_range: tuple[int, int] = (5, 20)
    class_range: tuple[int, int] = (3, 8)
    # probability that a class-pool sentence is borrowed from another class
    cross_prob: float = 0.15
    max_closing: int = 2


def _header(rng) -> str:
    kind = rng.choice(["CIVIL", "CRIMINAL"])
    no, year = int(rng.integers(1, 9999)), int(rng.integers(1995, 2021))
    return (
        f"IN THE SUPREME COURT OF INDIA. {kind} APPELLATE JURISDICTION. "
        f"{kind.title()} Appeal No. {no} of {year}. JUDGMENT."
    )


def generate_synthetic_corpus(n: int, seed: int = 0, cfg: SynthConfig | None = None):
    """Return ``n`` (raw_text, Disposition) pairs, classes assigned round-robin."""
    if n < 30:
        raise ValueError(f"n must be >= 30, got {n}")
    cfg = cfg or SynthConfig()
    classes = list(Disposition)
    out = []
    for i in range(n):
        rng = stream(seed, 5, i)
        label = classes[i % len(classes)]
        nb = int(rng.integers(cfg.boilerplate_range[0], cfg.boilerplate_range[1] + 1))
        nc = int(rng.integers(cfg.class_range[0], cfg.class_range[1] + 1))
        body = [BOILERPLATE[j] for j in rng.choice(len(BOILERPLATE), nb, replace=False)]
        own = CLASS_POOLS[label]
        picks = rng.choice(len(own), nc, replace=False)
        for j in picks:
            if rng.random() < cfg.cross_prob:
                other = classes[(classes.index(label) + int(rng.integers(1, 3))) % 3]
                body.append(CLASS_POOLS[other][j % len(CLASS_POOLS[other])])
            else:
                body.append(own[j])
        body = [body[j] for j in rng.permutation(len(body))]
        templates = DISPOSITION_TEMPLATES[label]
        order = templates[int(rng.integers(len(templates)))]
        n_close = int(rng.integers(0, cfg.max_closing + 1))
        closing = [CLOSING[j] for j in rng.choice(len(CLOSING), n_close, replace=False)]
        text = "\n".join([_header(rng), " ".join(body), order, *closing]) + "\n"
        out.append((text, label))
    return out
