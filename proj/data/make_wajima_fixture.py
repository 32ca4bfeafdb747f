"""Generates the Wajima earthquake scenario under data/wajima/.

Deterministic: rerunning produces identical files. Images are synthetic
stand-ins drawn with Pillow; all text is written for this fixture.
"""

import csv
import io
import json
import random
from pathlib import Path

from PIL import Image, ImageDraw

OUT = Path(__file__).resolve().parent / "wajima"

SITES = [
    # site_id, location_name, grade, map position
    ("site_01", "Wajima Drama Memorial Hall", "G2", (585, 430)),
    ("site_02", "Hama Street", "G4", (235, 200)),
    ("site_03", "Concrete Bridge", "G3", (430, 318)),
    ("site_04", "Central Nishikigawa Street", "G4", (520, 250)),
    ("site_05", "North Asaichi Street", "G5", (330, 150)),
    ("site_06", "South Central Asaichi Street", "G5", (365, 235)),
]

ALIASES = {
    "Wajima Drama Memorial Hall": ["Drama Memorial Hall", "Wajima Drama Hall"],
    "Hama Street": ["Hama-dori"],
    "Concrete Bridge": ["Kawarada River Bridge"],
    "Central Nishikigawa Street": ["Nishikigawa Street", "Nishikigawa-dori"],
    "North Asaichi Street": ["Asaichi Street North", "North Morning Market Street"],
    "South Central Asaichi Street": ["Asaichi Street South", "South Morning Market Street"],
}

EXTRA_PLACES = [
    ("Wajima Morning Market", ["Asaichi"], (350, 190)),
    ("Wajima Port", [], (280, 90)),
    ("Wajima City Hall", [], (640, 330)),
]

DESCRIPTIONS = {
    "site_01": "A large modern hall with a reinforced concrete frame. The structure stands "
               "upright; fine cracks run through the plaster of the facade and a few "
               "cladding panels near the entrance have fallen. No structural members "
               "appear displaced.",
    "site_02": "Two-storey timber and masonry houses along a narrow street. Several roofs "
               "have partly collapsed, walls lean outward and one house has lost its "
               "front wall. Debris blocks most of the carriageway.",
    "site_03": "A short reinforced concrete road bridge over the river. The deck is intact "
               "but one abutment shows wide diagonal cracks and spalled concrete with "
               "exposed reinforcement; the approach slab has settled by several "
               "centimetres.",
    "site_04": "A commercial street with mixed masonry and timber shop houses. Many "
               "buildings show heavy cracking in load-bearing walls, partial failure of "
               "upper floors and fallen gable walls. Utility poles are tilted.",
    "site_05": "A burnt-out district. Rows of wooden buildings have burned down to their "
               "foundations; only scorched metal sheets, chimneys and ash remain. Streets "
               "are covered with charred debris.",
    "site_06": "The southern part of the morning-market area. Buildings have collapsed "
               "completely, several were consumed by fire, and the remaining ones are "
               "reduced to piles of timber and roof tiles.",
}

GRADE_WORDS = {
    "G1": "negligible to slight damage",
    "G2": "moderate damage",
    "G3": "substantial to heavy damage",
    "G4": "very heavy damage",
    "G5": "destruction",
}


def draw_map(path):
    rnd = random.Random(7)
    img = Image.new("RGB", (800, 600), (232, 226, 208))
    d = ImageDraw.Draw(img)
    # Sea along the north coast.
    d.polygon([(0, 0), (800, 0), (800, 60), (600, 80), (420, 70), (260, 55), (120, 80), (0, 70)],
              fill=(120, 170, 215))
    # Hills in the south-east.
    for _ in range(40):
        x, y = rnd.randint(560, 800), rnd.randint(460, 600)
        r = rnd.randint(20, 60)
        d.ellipse((x - r, y - r, x + r, y + r), fill=(170, 196, 150))
    # River running north.
    d.line([(470, 600), (455, 470), (438, 330), (420, 200), (402, 70)], fill=(110, 160, 205), width=14)
    # Blocks.
    for _ in range(220):
        x, y = rnd.randint(150, 720), rnd.randint(90, 560)
        w, h = rnd.randint(12, 36), rnd.randint(10, 28)
        shade = rnd.randint(190, 215)
        d.rectangle((x, y, x + w, y + h), fill=(shade, shade - 8, shade - 20))
    # Streets.
    streets = [
        [(140, 210), (300, 190), (420, 175), (560, 180), (740, 200)],
        [(180, 130), (330, 150), (470, 140)],
        [(300, 300), (438, 320), (620, 330), (760, 350)],
        [(330, 100), (350, 240), (370, 420), (380, 580)],
        [(520, 120), (520, 300), (585, 430), (640, 580)],
        [(200, 420), (400, 440), (700, 470)],
    ]
    for s in streets:
        d.line(s, fill=(250, 250, 245), width=7)
        d.line(s, fill=(150, 150, 150), width=1)
    img.save(path, "PNG", optimize=False)


def draw_site(path, seed, grade):
    rnd = random.Random(seed)
    level = int(grade[1])
    img = Image.new("RGB", (480, 360), (180, 200, 225))
    d = ImageDraw.Draw(img)
    d.rectangle((0, 250, 480, 360), fill=(120, 115, 105))
    for i in range(5):
        x0 = 20 + i * 92
        w = rnd.randint(60, 80)
        h = rnd.randint(90, 170)
        collapse = min(1.0, (level - 1) * 0.22 + rnd.random() * 0.15)
        top = 250 - int(h * (1 - collapse))
        color = (150 + rnd.randint(0, 40), 120 + rnd.randint(0, 30), 90 + rnd.randint(0, 30))
        if level >= 5:
            color = (60 + rnd.randint(0, 20),) * 3
        d.rectangle((x0, top, x0 + w, 250), fill=color)
        for _ in range(level * 6):
            cx, cy = rnd.randint(x0, x0 + w), rnd.randint(top, 250)
            d.line((cx, cy, cx + rnd.randint(-15, 15), cy + rnd.randint(5, 20)), fill=(40, 40, 40), width=1)
    for _ in range(level * 40):
        x, y = rnd.randint(0, 479), rnd.randint(240, 355)
        r = rnd.randint(2, 4 + level)
        g = rnd.randint(70, 140)
        d.ellipse((x - r, y - r, x + r, y + r), fill=(g, g - 10, g - 20))
    if path.suffix == ".jpg":
        img.save(path, "JPEG", quality=90)
    else:
        img.save(path, "PNG", optimize=False)


GUIDELINE = """European Macroseismic Scale 1998: field summary for damage grading

Purpose of this summary

This note summarises how the European Macroseismic Scale of 1998, known as EMS-98, is used by survey teams after an earthquake. The scale assigns an intensity to a place from the effects that the shaking had on people, objects and buildings. For post-disaster management the most useful part of the scale is the classification of building damage into five grades, combined with the classification of buildings into vulnerability classes. Survey teams look at each building, decide which vulnerability class it belongs to, decide which damage grade it suffered, and report both. Intensity is then inferred from how many buildings of each class reached each grade, but a damage survey for response planning can stop at the per-building or per-street grade.

Intensity is not magnitude. Magnitude describes the energy released at the source, while intensity describes what happened at one location. Two towns hit by the same earthquake can receive very different intensities because of distance, soil and the kind of buildings they contain. Intensity is written with Roman numerals from I to XII. Degrees I to IV describe shaking that causes no damage. Degree V marks the first slight damage to vulnerable buildings. Degrees VI to VIII describe increasing damage, and degrees IX to XII describe general destruction, with XII meaning that practically all structures are destroyed.

Vulnerability classes

Buildings differ greatly in how well they resist shaking. The scale groups them into six vulnerability classes named A to F. Class A is the most vulnerable and class F the least. Rubble stone, fieldstone and adobe houses usually fall into class A. Simple stone masonry and unreinforced brick with heavy floors usually fall into class B. Unreinforced masonry with reinforced concrete floors, and massive stone buildings, usually fall into class C. Reinforced masonry and confined masonry fall into classes C or D depending on workmanship. Reinforced concrete frames without earthquake-resistant design usually fall into class C, and with a moderate level of earthquake-resistant design into class D. Steel structures and timber structures fall between classes C and E depending on their detailing. Class F is reserved for structures with a high level of earthquake-resistant design.

The class assigned to a single building can be moved up or down from the most likely class. Poor workmanship, a bad state of preservation, irregular shape in plan or elevation, soft storeys and heavy roofs move a building towards a more vulnerable class. Good workmanship, regular shape, ductile detailing and recent strengthening move it towards a less vulnerable class. Surveyors should record the reason for any such adjustment.

Timber buildings deserve special attention. Traditional timber houses with light walls often survive strong shaking with moderate damage, but those with heavy clay tile roofs, decayed members or open ground floors used as shops may fail suddenly. Timber districts are also exposed to fire following the earthquake, which can destroy buildings that the shaking itself only damaged. Where fire has destroyed a building, the surveyor records the final state and notes that fire was the cause.

Damage grades

The scale defines five grades of damage, numbered 1 to 5, which in response practice are often written G1 to G5. The definitions differ slightly between masonry and reinforced concrete buildings because the two materials show damage in different ways, but the grades are meant to be equivalent in severity.

Grade 1: negligible to slight damage. There is no structural damage and only slight non-structural damage. In masonry buildings, hair-line cracks appear in very few walls and small pieces of plaster fall. Loose stones may fall from the upper parts of buildings in very few cases. In reinforced concrete buildings, fine cracks appear in plaster over frame members or in the infill walls at their base. A building at grade 1 can be used normally.

Grade 2: moderate damage. There is slight structural damage and moderate non-structural damage. In masonry buildings, cracks appear in many walls, fairly large pieces of plaster fall, and parts of chimneys collapse. In reinforced concrete buildings, cracks appear in columns and beams of frames and in structural walls, infill panels crack, and brittle cladding and plaster fall. Mortar falls from the joints of wall panels. A building at grade 2 usually needs repair but is not dangerous to approach.

Grade 3: substantial to heavy damage. There is moderate structural damage and heavy non-structural damage. In masonry buildings, large and extensive cracks appear in most walls, roof tiles detach, chimneys fracture at the roof line, and individual non-structural elements such as partitions and gable walls fail. In reinforced concrete buildings, cracks appear in columns and at beam-column joints at the base of the frame and at joints of coupled walls, concrete cover spalls, and reinforcing bars buckle. Large cracks open in partition and infill walls and individual infill panels fail. Buildings at grade 3 should not be occupied until they are inspected in detail.

Grade 4: very heavy damage. There is heavy structural damage and very heavy non-structural damage. In masonry buildings, walls fail seriously and roofs and floors partially fail. In reinforced concrete buildings, large cracks appear in structural elements with compression failure of concrete and fracture of reinforcing bars, bond failure of beam reinforcing bars occurs, and columns tilt. A few columns collapse or a single upper floor collapses. Buildings at grade 4 are dangerous; access must be restricted and debris may block streets.

Grade 5: destruction. There is very heavy structural damage. Masonry buildings collapse totally or nearly totally. In reinforced concrete buildings, the ground floor or parts of the building collapse, for example a whole wing. Buildings that burned down after the earthquake are recorded at grade 5 with a note on fire. Search and rescue is the first priority in areas with many grade 5 buildings.

Assigning a grade in the field

The surveyor assigns the grade that matches the most severe structural damage seen on the building, not the average. Non-structural damage alone cannot raise a building above grade 2. When structural damage is hidden behind cladding, the surveyor should look for indirect signs: displaced window frames, jammed doors, tilted columns and cracks that continue through several finishes. When only a photograph is available, the surveyor should state which features were visible and which grade they support, and should prefer the lower of two grades if the evidence does not decide between them, noting the uncertainty.

For a street or a block, a single representative grade is reported. It is the grade reached by the majority of the most vulnerable buildings present, and the highest grade observed is noted separately if it differs. Bridges, retaining walls and other infrastructure are graded by analogy to reinforced concrete buildings: cracking and spalling of piers or abutments with exposed reinforcement corresponds to grade 3, loss of bearing or partial collapse of a span to grade 4, and collapse of a span to grade 5.

Quantity terms

The scale uses three quantity words when counting damaged buildings of a class. Few means less than about fifteen percent of the buildings, many means between about fifteen and fifty-five percent, and most means more than about fifty-five percent. These words matter for assigning intensity but a response survey can report counts directly.

Intensity degrees with damage

Intensity V, strong: a few buildings of vulnerability class A and B suffer grade 1 damage. Intensity VI, slightly damaging: many buildings of class A and B suffer grade 1 damage and a few of class A and B suffer grade 2. Intensity VII, damaging: many buildings of class A suffer grade 3 and a few grade 4; many of class B suffer grade 2 and a few grade 3; a few of class C suffer grade 2. Intensity VIII, heavily damaging: many buildings of class A suffer grade 4 and a few grade 5; many of class B suffer grade 3 and a few grade 4; many of class C suffer grade 2 and a few grade 3; a few of class D suffer grade 2. Intensity IX, destructive: many buildings of class A suffer grade 5; many of class B suffer grade 4 and a few grade 5; many of class C suffer grade 3 and a few grade 4; many of class D suffer grade 2 and a few grade 3; a few of class E suffer grade 2. Intensity X, very destructive: most buildings of class A and many of class B suffer grade 5; many of class C suffer grade 4 and a few grade 5; many of class D suffer grade 3 and a few grade 4; many of class E suffer grade 2 and a few grade 3; a few of class F suffer grade 2. At intensities XI and XII nearly all buildings are destroyed.

Use in response planning

Damage grades translate directly into response needs. Areas dominated by grade 4 and grade 5 need search and rescue, fire control, cordons and demolition of unstable structures. Areas with grade 3 damage need detailed structural inspection before residents return, and temporary shoring of damaged walls. Areas with grade 1 and grade 2 damage can often host shelters, medical posts and logistics hubs after a quick inspection. Transport links that reached grade 3 or higher, such as bridges with damaged abutments, must be inspected before heavy vehicles use them, because rescue and supply convoys depend on them.

Reports based on this scale should state the grade for each surveyed location using the G1 to G5 notation, the building type that determined it, and the visible evidence. Secondary hazards such as fire, landslides, liquefaction and tsunami should be recorded separately because they require different responses, even when they also raise the damage grade.
"""


def expert_summary():
    lines = ["# Expert Summary", "", "## Overview", "",
             "A strong earthquake has struck Wajima City on the Noto Peninsula. Six on-site "
             "images were assessed against the EMS-98 damage grades. Damage ranges from "
             "moderate at the memorial hall to complete destruction by collapse and fire in "
             "the morning-market district.", "", "## Site Assessments", ""]
    for sid, name, grade, _ in SITES:
        lines.append(f"- {name}: {grade} ({GRADE_WORDS[grade]}). {DESCRIPTIONS[sid].split('.')[0]}.")
    lines += ["", "## Damage Grades", "",
              "Two sites reached G5 (North and South Central Asaichi Street), two reached G4, "
              "the bridge reached G3 and the memorial hall G2. The fire-affected market area "
              "is the most severely hit part of the city.", ""]
    return "\n".join(lines)


ALERT_NEWS = """# Alert News

## Headline

Major earthquake damage in Wajima City: fire-destroyed market district and blocked streets

## Dangerous Areas

- Fire-Damaged Areas: particularly around Asaichi Street and near the Wajima Morning Market, these zones have unstable structures and debris. Avoid these areas due to potential fire and structural hazards.
- Hama Street and Central Nishikigawa Street: very heavy damage to houses and shops, leaning walls and debris on the road.
- Concrete Bridge: cracked abutment and settled approach; vehicles must not cross until inspected.

## Safety Instructions

Stay away from damaged buildings and do not re-enter homes until they are inspected. Follow evacuation orders and use the shelter at the Wajima Drama Memorial Hall. Keep roads clear for emergency vehicles and report trapped people to emergency services.
"""

EMERGENCY_REPORT = """# Emergency Services Report

## Priority Areas

1. North Asaichi Street and South Central Asaichi Street: search and rescue in collapsed and burned buildings, fire watch for rekindling.
2. Hama Street and Central Nishikigawa Street: rescue of trapped residents, cordons and removal of debris blocking access.
3. Concrete Bridge: Immediate assessment and restoration are crucial to reestablish vital transport links.

## Required Services

Urban search and rescue teams, fire brigades, emergency medical teams with field triage, structural engineers for rapid inspection, and logistics for water, food and shelter supplies. The Wajima Drama Memorial Hall is suitable as a shelter and medical post.

## Historical Reference

Records of the 2024 Noto Peninsula earthquake report more than 240 deaths, many of them in collapsed timber houses, and a large fire around the Wajima morning market. The response relied on shelters in public halls and on restoring road access along damaged routes.
"""

ASSIGNMENT_REPORTS = """# Human Allocation Report

## Allocation by Location

- Wajima Drama Memorial Hall: This area will host a large emergency shelter. It requires a team of 20 medical personnel, including 5 doctors and 15 nurses, supported by 10 logistics personnel.
- North Asaichi Street: 40 rescue workers and 15 firefighters for search in burned structures.
- South Central Asaichi Street: 35 rescue workers and 10 firefighters.
- Hama Street: 25 rescue workers and 6 structural engineers.
- Central Nishikigawa Street: 20 rescue workers and 6 structural engineers.
- Concrete Bridge: 8 engineers and 12 construction workers for inspection and temporary repair.

## Totals

201 personnel in total: 20 medical personnel, 10 logistics personnel, 120 rescue workers, 25 firefighters, 20 engineers and structural engineers, and 12 construction workers.

# Public Notice

## Situation

A strong earthquake has caused heavy damage in Wajima City. Fires destroyed much of the Asaichi morning-market district and several streets are blocked by debris.

## Guidance

Shelter, food, water and medical care are available at the Wajima Drama Memorial Hall. Do not enter damaged buildings, avoid the market district and the Concrete Bridge, and follow the instructions of rescue teams.

## Coordination Statement

We are coordinating with governmental agencies and non-governmental organizations to ensure a comprehensive response.

# Reconstruction Plan

## Damage Summary

The market district was destroyed by collapse and fire, two residential and commercial streets suffered very heavy damage, the Concrete Bridge needs structural repair, and the memorial hall has moderate damage.

## Phases

1. Months 0 to 6: debris removal, demolition of unsafe buildings and temporary housing.
2. Months 6 to 24: bridge repair, utility restoration and reconstruction of damaged homes to current seismic codes.
3. Years 2 to 5: rebuilding of the Asaichi market district with fire-resistant layout and community facilities.

## Budget Estimate

Based on previous case studies, an estimated budget of approximately $1 billion is needed to cover structural repairs, with further funding for housing and the market district.
"""

SEARCH_FIXTURE = {
    "noto earthquake 2024 casualties": [
        {"title": "2024 Noto earthquake - overview of damage",
         "url": "https://example.org/noto-2024/overview",
         "snippet": "The 1 January 2024 earthquake on the Noto Peninsula caused more than 240 deaths and destroyed thousands of homes; a large fire burned the Wajima morning market."},
        {"title": "Emergency response after the Noto Peninsula earthquake",
         "url": "https://example.org/noto-2024/response",
         "snippet": "Shelters opened in public halls and schools; road damage isolated several communities for days."},
        {"title": "Timber house collapse in the Noto earthquake",
         "url": "https://example.org/noto-2024/timber",
         "snippet": "Older timber houses with heavy tile roofs accounted for most collapses."},
    ],
    "earthquake reconstruction budget and personnel deployment japan": [
        {"title": "Kumamoto 2016 reconstruction",
         "url": "https://example.org/kumamoto-2016/reconstruction",
         "snippet": "Reconstruction of public infrastructure after the Kumamoto earthquakes required budgets in the billions of dollars over several years."},
        {"title": "Disaster medical assistance team deployment",
         "url": "https://example.org/dmat/deployment",
         "snippet": "Teams of doctors, nurses and logistics staff are deployed to shelters within 48 hours of a major earthquake."},
    ],
}


def call(cid, tool, args):
    return {"id": cid, "tool": tool, "arguments": args}


def golden_script():
    interp = "Describe the location and the visible earthquake damage to buildings and infrastructure."
    expert_calls = [call(f"call_img_{i + 1}", "interpret_image", {"image": sid, "instruction": interp})
                    for i, (sid, _, _, _) in enumerate(SITES)]
    expert_calls.append(call("call_guideline_1", "file_search",
                             {"query": "damage grade definitions masonry reinforced concrete collapse", "k": 3}))
    entries = [
        {"stage": "expert", "index": 0,
         "response": {"text": "", "tool_calls": expert_calls, "finish_reason": "tool_calls"}},
        {"stage": "expert", "index": 1,
         "response": {"text": expert_summary(), "tool_calls": [], "finish_reason": "stop"}},
    ]
    for i, (sid, name, _, _) in enumerate(SITES):
        entries.append({"stage": "tool:interpret_image", "index": i,
                        "response": {"text": f"Location: {name}. {DESCRIPTIONS[sid]}",
                                     "tool_calls": [], "finish_reason": "stop"}})
    entries += [
        {"stage": "alerts", "index": 0,
         "response": {"text": ALERT_NEWS, "tool_calls": [], "finish_reason": "stop"}},
        {"stage": "emergency", "index": 0,
         "response": {"text": "", "tool_calls": [call("call_web_1", "web_search",
                                                       {"query": "noto earthquake 2024 casualties"})],
                      "finish_reason": "tool_calls"}},
        {"stage": "emergency", "index": 1,
         "response": {"text": EMERGENCY_REPORT, "tool_calls": [], "finish_reason": "stop"}},
        {"stage": "assignment", "index": 0,
         "response": {"text": "", "tool_calls": [call("call_web_2", "web_search",
                                                       {"query": "earthquake reconstruction budget and personnel deployment japan"})],
                      "finish_reason": "tool_calls"}},
        {"stage": "assignment", "index": 1,
         "response": {"text": ASSIGNMENT_REPORTS, "tool_calls": [], "finish_reason": "stop"}},
    ]
    return entries


TARGETS = ["ExpertSummary", "AlertNews", "EmergencyServices", "HumanAllocation",
           "PublicNotice", "ReconstructionPlan", "LocalGrading", "MapAnnotation"]

WEAKNESSES = {
    "ExpertSummary": "coherent and consistent with the images; the bridge grade rests on the abutment alone and the accuracy of the G2 for the hall is uncertain because interior damage is not visible.",
    "AlertNews": "clear dangerous-area list; consistency with the map is good, but accuracy suffers from missing timing information for the shelter.",
    "EmergencyServices": "priorities are coherent; the historical reference is thin and casualty figures are not tied to the surveyed streets.",
    "HumanAllocation": "numbers are consistent with the totals; the allocation lacks a basis for the rescue worker counts, which hurts accuracy.",
    "PublicNotice": "coherent and readable; it omits contact channels and times, which limits its usefulness.",
    "ReconstructionPlan": "phases are consistent; the budget of $1 billion is not broken down, so its accuracy cannot be checked.",
    "LocalGrading": "grades match the visible damage for five sites; the memorial hall may be under-graded.",
    "MapAnnotation": "markers sit at the right streets and the legend is readable; two markers in the market area are close together.",
}


def evaluator_script(rounds=5):
    rnd = random.Random(11)
    entries = []
    for r in range(rounds):
        for t in TARGETS:
            score = rnd.randint(5, 9)
            entries.append({"stage": f"evaluator:{t}", "index": r,
                            "response": {"text": f"SCORE: {score}/10\nWEAKNESSES: {WEAKNESSES[t]}",
                                         "tool_calls": [], "finish_reason": "stop"}})
    return entries


def human_csv():
    rnd = random.Random(23)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["round", "target", "score", "explanation"])
    for r in range(1, 6):
        for t in TARGETS:
            score = rnd.randint(4, 9)
            note = f"round {r}: readable, but \"{t}\" misses some specifics, e.g. timing, sources"
            w.writerow([r, t, score, note if rnd.random() < 0.8 else ""])
    return buf.getvalue()


def write_json(path, obj):
    path.write_text(json.dumps(obj, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def main():
    (OUT / "images").mkdir(parents=True, exist_ok=True)
    draw_map(OUT / "images" / "wajima_map.png")
    sites = []
    for i, (sid, name, grade, _) in enumerate(SITES):
        ext = ".jpg" if i % 2 else ".png"
        draw_site(OUT / "images" / f"{sid}{ext}", 100 + i, grade)
        sites.append({"site_id": sid, "location_name": name, "image": f"images/{sid}{ext}"})
    write_json(OUT / "manifest.json", {
        "scenario_id": "wajima-2024",
        "region_name": "Wajima City, Ishikawa, Japan",
        "sites": sites,
        "global_map": "images/wajima_map.png",
        "gazetteer": "gazetteer.json",
        "guideline": "ems98_summary.txt",
    })
    gaz = [{"name": n, "aliases": ALIASES[n], "x": p[0], "y": p[1]} for _, n, _, p in SITES]
    gaz += [{"name": n, "aliases": a, "x": p[0], "y": p[1]} for n, a, p in EXTRA_PLACES]
    write_json(OUT / "gazetteer.json", gaz)
    (OUT / "ems98_summary.txt").write_text(GUIDELINE, encoding="utf-8")
    write_json(OUT / "web_search.json", SEARCH_FIXTURE)
    write_json(OUT / "config.json", {
        "gateway": {"model_id": "gpt-4o", "evaluator_model_id": "gpt-4o", "temperature": 0.7},
        "retrieval": {"chunk_size": 300, "overlap": 50, "k": 3},
        "orchestration": {"parallel_alerts_emergency": True, "max_tool_iterations": 8,
                          "max_format_retries": 2},
        "tools": {"web_search": {"mode": "fixture", "fixture": "web_search.json"}},
    })
    write_json(OUT / "script.json", golden_script())
    write_json(OUT / "evaluator_script.json", evaluator_script())
    (OUT / "human_scores.csv").write_text(human_csv(), encoding="utf-8")


if __name__ == "__main__":
    main()
