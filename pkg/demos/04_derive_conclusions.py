"""Forward inference: deriving conclusion graphs from premise pairs.

Each transformable type turns two premise graphs into a conclusion graph;
classifying the derived triple recovers the type that produced it.

Run with: python3 demos/04_derive_conclusions.py
"""

from amrinfer import (
    InferenceType,
    TransformRequest,
    parse_penman,
    serialize_penman,
    transform,
)

AMR = parse_penman

# "a scar on the knee is a kind of scar" + "a scar is an acquired
# characteristic" --ARG-SUB--> "a scar on the knee is an acquired
# characteristic".
scar_kind = AMR("(s / scar :domain (s2 / scar :location (k / knee)))")
scar_fact = AMR("(c / characteristic :ARG1-of (a / acquire-01) :domain (s / scar))")
out = transform(TransformRequest(scar_kind, scar_fact, InferenceType.ARG_SUB))
print("ARG-SUB:     ", serialize_penman(out))

# "photosynthesis stores energy" + "respiration releases energy"
# --FRAME-CONJ--> the conjunction of both.
store = AMR("(s / store-01 :ARG0 (p / photosynthesis) :ARG1 (e / energy))")
release = AMR("(r / release-01 :ARG0 (r2 / respiration) :ARG1 (e / energy))")
out = transform(TransformRequest(store, release, InferenceType.FRAME_CONJ))
print("FRAME-CONJ:  ", serialize_penman(out))

# "rock is a hard material" + "granite is a hard material"
# --ARG/PRED-GEN--> "granite is a kind of rock".
rock = AMR("(m / material :mod (h / hard) :domain (r / rock))")
granite = AMR("(m / material :mod (h / hard) :domain (g / granite))")
out = transform(TransformRequest(rock, granite, InferenceType.ARG_PRED_GEN))
print("ARG/PRED-GEN:", serialize_penman(out))

# A conditional rule bound against a fact: "if something is renewable then
# that something is not a fossil" + "fuel wood is a renewable resource"
# --COND-FRAME--> "wood (fuel) is not a fossil".
rule = AMR("(f / fossil :polarity - :domain (s / something) :condition (r / renewable :domain s))")
fact = AMR("(r / resource :mod (r2 / renewable) :domain (w / wood :mod (f / fuel)))")
out = transform(TransformRequest(rule, fact, InferenceType.COND_FRAME))
print("COND-FRAME:  ", serialize_penman(out))

# Unsupported types refuse loudly.
try:
    transform(TransformRequest(rock, granite, InferenceType.UNK))
except Exception as exc:
    print("UNK:         ", exc)
