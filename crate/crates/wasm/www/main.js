import init, { tuple_invariants, sectional_curve, integrate } from "./pkg/nk6_wasm.js";

const $ = (id) => document.getElementById(id);
const S = Math.sqrt(5) / 4;
const fmt = (v) => (v === null || v === undefined ? "–" : typeof v === "number" ? v.toPrecision(12) : String(v));

function fill(table, rows) {
  table.replaceChildren(
    ...rows.map(([k, v]) => {
      const tr = document.createElement("tr");
      for (const text of [k, v]) {
        const td = document.createElement("td");
        td.textContent = text;
        tr.append(td);
      }
      return tr;
    }),
  );
}

function tuple() {
  return ["l1", "l2", "m1", "m2"].map((id) => parseFloat($(id).value) || 0);
}

function drawCurve(c) {
  const cv = $("plot");
  const g = cv.getContext("2d");
  const W = cv.width, H = cv.height, pad = 40;
  const all = [...c.e1e2_e3, ...c.e1_e2e3, 1 / 16, 21 / 16].filter((v) => v !== null);
  let lo = Math.min(...all), hi = Math.max(...all);
  const m = 0.08 * (hi - lo || 1);
  lo -= m;
  hi += m;
  const x = (p) => pad + ((W - 2 * pad) * p) / Math.PI;
  const y = (k) => H - pad - ((H - 2 * pad) * (k - lo)) / (hi - lo);
  g.clearRect(0, 0, W, H);
  g.strokeStyle = "#999";
  g.fillStyle = "#444";
  g.font = "12px system-ui";
  g.beginPath();
  g.moveTo(pad, pad / 2);
  g.lineTo(pad, H - pad);
  g.lineTo(W - pad / 2, H - pad);
  g.stroke();
  g.fillText("0", pad - 4, H - pad + 16);
  g.fillText("π", x(Math.PI) - 4, H - pad + 16);
  g.fillText("φ", W / 2, H - 10);
  g.setLineDash([5, 4]);
  for (const k of [1 / 16, 21 / 16]) {
    g.beginPath();
    g.moveTo(pad, y(k));
    g.lineTo(W - pad / 2, y(k));
    g.stroke();
    g.fillText(k.toFixed(4), 2, y(k) + 4);
  }
  g.setLineDash([]);
  for (const [key, color] of [["e1e2_e3", "#1f5fbf"], ["e1_e2e3", "#c0392b"]]) {
    g.strokeStyle = color;
    g.lineWidth = 2;
    g.beginPath();
    c[key].forEach((k, i) => (k === null ? null : i ? g.lineTo(x(c.phi[i]), y(k)) : g.moveTo(x(c.phi[i]), y(k))));
    g.stroke();
  }
  g.lineWidth = 1;
}

function refresh() {
  const t = tuple();
  const v = JSON.parse(tuple_invariants(...t));
  fill($("inv"), [
    ["‖h‖²", fmt(v.hsq)],
    ["Θ (maximised)", fmt(v.theta)],
    ["λ₁ + λ₂", fmt(v.theta_tuple)],
    ["Q (matrices)", fmt(v.q_direct)],
    ["Q (closed form)", fmt(v.q_closed)],
    ["remainder R ≥ 0", fmt(v.remainder)],
    ["integrand ‖h‖²(‖h‖² − 5/4 − 3Θ²/2)", fmt(v.integrand)],
    ["Ricci eigenvalues", v.ricci.map(fmt).join(", ")],
    ["scalar curvature", fmt(v.tau)],
    ["sectional range", `${fmt(v.k_min)} … ${fmt(v.k_max)}`],
    ["recovered tuple", v.recovered ? v.recovered.map(fmt).join(", ") : "not reconstructed"],
  ]);
  drawCurve(JSON.parse(sectional_curve(...t, 241)));
}

function runIntegral() {
  const n = Math.max(2, Math.min(40, parseInt($("n").value, 10) || 12));
  $("integral").replaceChildren();
  try {
    const t0 = performance.now();
    const r = JSON.parse(integrate($("model").value, n));
    fill($("integral"), [
      ["rule", r.rule],
      ["integral", fmt(r.integral)],
      ["volume", fmt(r.volume)],
      ["integrand range", `${fmt(r.min)} … ${fmt(r.max)}`],
      ["sup ‖h‖²", fmt(r.sup_hsq)],
      ["classification", r.classification],
      ["time", `${(performance.now() - t0).toFixed(0)} ms`],
    ]);
  } catch (e) {
    fill($("integral"), [["error", e.message ?? String(e)]]);
    $("integral").classList.add("err");
    return;
  }
  $("integral").classList.remove("err");
}

function resetTuple() {
  $("l1").value = $("l2").value = S.toFixed(12);
  $("m1").value = $("m2").value = "0";
  refresh();
}

await init();
for (const id of ["l1", "l2", "m1", "m2"]) $(id).addEventListener("input", refresh);
$("reset").addEventListener("click", resetTuple);
$("run").addEventListener("click", runIntegral);
resetTuple();
