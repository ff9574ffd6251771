import init, { classify, hasseSvg, exploreSubshift } from "./pkg/semihull_web.js";

const presets = {
  chain: {
    elements: ["0", "1", "a", "aa"],
    zero: "0",
    table: [["0", "0", "0", "0"], ["0", "1", "a", "aa"], ["0", "a", "aa", "0"], ["0", "aa", "0", "0"]],
  },
  prime: {
    elements: ["0", "e", "s"],
    zero: "0",
    table: [["0", "0", "0"], ["0", "e", "0"], ["0", "s", "0"]],
  },
};

const $ = (id) => document.getElementById(id);

function fail(el, err) {
  el.hidden = false;
  el.className = "error";
  el.textContent = String(err.message ?? err);
}

function loadPreset() {
  const p = presets[$("table-preset").value];
  $("table").value = JSON.stringify(p, null, 1);
}

function draw() {
  $("classified").hidden = true;
  try {
    $("hasse").innerHTML = hasseSvg($("table").value);
  } catch (e) {
    $("hasse").innerHTML = "";
    fail($("classified"), e);
  }
}

function showClassification() {
  const out = $("classified");
  out.hidden = false;
  out.className = "";
  try {
    out.textContent = classify($("table").value);
  } catch (e) {
    fail(out, e);
  }
}

function explore() {
  const out = $("explored");
  out.className = "";
  try {
    const r = JSON.parse(exploreSubshift($("spec").value, Number($("depth").value), Number($("bound").value)));
    const ultras = r.ground_ultra?.no_ground_ultra?.witness ?? [];
    $("summary").textContent =
      `${r.words.length} words at depth ${r.depth}, zero named ${r.zero}, ` +
      `${r.semigroup_size} elements` + (ultras.length ? `, ground ultra characters at ${ultras.join(" ")}` : "");
    out.textContent = JSON.stringify(r, null, 1);
  } catch (e) {
    $("summary").textContent = "";
    fail(out, e);
  }
}

await init();
$("table-preset").addEventListener("change", () => { loadPreset(); draw(); });
$("draw").addEventListener("click", draw);
$("classify").addEventListener("click", showClassification);
$("explore").addEventListener("click", explore);
loadPreset();
draw();
