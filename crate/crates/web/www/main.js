import init, { solve, penalty, smallest_cyclic_tree, offset_report } from "./pkg/oscm_web.js";

const $ = (id) => document.getElementById(id);

function show(id, fn) {
  const out = $(id);
  out.classList.remove("error");
  try {
    out.textContent = fn();
  } catch (e) {
    out.classList.add("error");
    out.textContent = String(e);
  }
}

// let the "working..." text paint before a long synchronous call
function later(id, fn) {
  $(id).classList.remove("error");
  $(id).textContent = "working...";
  setTimeout(() => show(id, fn), 20);
}

function runSolve() {
  $("drawing").innerHTML = "";
  show("solve-out", () => {
    const r = JSON.parse(solve($("instance").value, $("method").value));
    $("drawing").innerHTML = r.svg;
    const lines = [
      `method:      ${r.method}`,
      `ordering:    ${r.ordering.join(" ")}`,
      `crossings:   ${r.crossings}`,
      `lower bound: ${r.lower_bound}`,
    ];
    if (r.cycle) {
      lines.push("", `penalty digraph is cyclic: ${r.cycle.join(" -> ")}`,
        "no topological order exists; drawing shows the barycenter order");
    }
    return lines.join("\n");
  });
}

function runPenalty() {
  show("solve-out", () => {
    const r = JSON.parse(penalty($("instance").value));
    const lines = r.arcs.map(([u, v, w]) => `${u} -> ${v}  weight ${w}`);
    lines.push("", r.acyclic ? "acyclic" : `cyclic: ${r.cycle.join(" -> ")}`);
    return lines.join("\n");
  });
}

function runSearch() {
  later("search-out", () => {
    const text = smallest_cyclic_tree(Number($("max-vertices").value));
    $("instance").value = text;
    return text;
  });
}

function runOffset() {
  later("offset-out", () =>
    offset_report(Number($("stars").value), Number($("trials").value), Number($("seed").value)));
}

await init();
$("solve").addEventListener("click", runSolve);
$("penalty").addEventListener("click", runPenalty);
$("search").addEventListener("click", runSearch);
$("offset").addEventListener("click", runOffset);
runSolve();
