/** Dependency-free bar charts rendered as plain DOM nodes. */

export interface Bar {
  label: string;
  value: number;
}

export function barChart(
  doc: Document,
  title: string,
  bars: Bar[],
  maxValue?: number,
): HTMLElement {
  const peak = maxValue ?? Math.max(1, ...bars.map((bar) => bar.value));
  const container = doc.createElement("figure");
  container.className = "chart";
  const caption = doc.createElement("figcaption");
  caption.textContent = title;
  container.appendChild(caption);
  for (const bar of bars) {
    const row = doc.createElement("div");
    row.className = "chart-row";
    const label = doc.createElement("span");
    label.className = "chart-label";
    label.textContent = bar.label;
    const track = doc.createElement("div");
    track.className = "chart-track";
    const fill = doc.createElement("div");
    fill.className = "chart-fill";
    fill.style.width = `${Math.round((bar.value / peak) * 100)}%`;
    const value = doc.createElement("span");
    value.className = "chart-value";
    value.textContent = String(bar.value);
    track.appendChild(fill);
    row.append(label, track, value);
    container.appendChild(row);
  }
  return container;
}
